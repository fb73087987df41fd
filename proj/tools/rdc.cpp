// rdc: law suites, structure map dumps, reverse derivatives and gradient descent.

#include "rdc/suite.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace rdc;
using namespace rdc::laws;

enum Exit { Ok = 0, LawFail = 1, Usage = 2, Diverged = 3 };

struct Usage_ : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_arg(const std::string& s)
{
    if (std::filesystem::is_regular_file(s)) {
        std::ifstream in(s);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return s;
}

std::vector<double> parse_vector(const std::string& s)
{
    std::string t = s;
    std::erase_if(t, [](char c) { return c == '(' || c == ')' || c == ' '; });
    std::vector<double> out;
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty()) throw Usage_("not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::string format_vector(const std::vector<double>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s + ")";
}

void emit(const std::string& out, const std::string& text)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Usage_("cannot write " + out);
    f << text;
}

template <Semiring S>
Mor<S> structure_map(const Modality<S>& m, const std::string& name, const Obj& a, const Obj& b)
{
    if (name == "delta") return m.delta(a);
    if (name == "eps") return m.eps(a);
    if (name == "comult") return m.comult(a);
    if (name == "counit") return m.counit(a);
    if (name == "nabla") return m.nabla(a);
    if (name == "unit") return m.unit(a);
    if (name == "d") return m.d(a);
    if (name == "dcirc") return m.dcirc(a);
    if (name == "eta") return m.eta(a);
    if (name == "r") return m.r(a);
    if (name == "chi") return chi(m, a, b);
    if (name == "chi_inv") return chi_inv(m, a, b);
    if (name == "cup") return cup<S>(a);
    if (name == "cap") return cap<S>(a);
    if (name == "r_from_d") return r_from_d(m, m.d(a), a);
    if (name == "d_from_r") return d_from_r(m, m.r(a), a);
    if (name == "d_star") return star(m.d(a));
    throw Usage_("unknown map '" + name + "'");
}

const std::vector<std::string> kStructureMaps{"delta", "eps",  "comult", "counit", "nabla",    "unit",     "d",      "dcirc",
                                              "eta",   "r",    "chi",    "chi_inv", "cup",     "cap",      "r_from_d", "d_from_r",
                                              "d_star"};

template <Semiring S>
std::string dump_bag(const Params& p, const std::string& name)
{
    BagModality<S> m({p.degree, p.outer, CoeffPolicy::named(p.policy)});
    Obj a = Obj::alphabet(p.alphabet), b = Obj::atoms({"p"});
    return dump_tsv(structure_map<S>(m, name, a, b));
}

std::string dump_symbolic(const Params& p, const std::string& name, const std::string& expr)
{
    if (name != "D_of" && name != "R_of") throw Usage_("model " + p.model + " dumps only D_of and R_of");
    if (expr.empty()) throw Usage_(name + " needs --expr");
    std::string out;
    if (p.model == "poly") {
        PolyMap f = parse_poly(read_arg(expr));
        PolyMap g = name == "D_of" ? D_poly(f) : R_poly(f);
        for (std::size_t i = 0; i < g.comps.size(); ++i) out += std::to_string(i + 1) + "\t" + g.comps[i].str() + "\n";
    } else {
        ExprMap f = parse_expr(read_arg(expr));
        ExprMap g = name == "D_of" ? D_expr(f) : R_expr(f);
        for (std::size_t i = 0; i < g.comps.size(); ++i) out += std::to_string(i + 1) + "\t" + expr_str(g.comps[i]) + "\n";
    }
    return out;
}

int cmd_laws(const std::string& suite, const Params& p, const std::string& format, const std::string& out)
{
    if (!suite_supported(suite, p.model)) throw Usage_("suite " + suite + " does not apply to model " + p.model);
    auto reports = run_suite(suite, p);
    std::string text = format == "structured" ? render_structured(suite, p, reports) : render_text(reports);
    emit(out, text);
    if (!out.empty() && format == "structured") std::cout << render_text(reports);
    return any_fail(reports) ? LawFail : Ok;
}

int cmd_rderive(const std::string& expr, const std::string& point, const std::string& cotangent)
{
    if (expr.empty()) throw Usage_("rderive needs --expr");
    ExprMap f = parse_expr(read_arg(expr));
    ExprMap r = R_expr(f);
    std::cout << "f = " << f.str() << "\n";
    std::string args;
    for (std::size_t i = 1; i <= f.n + f.m(); ++i) args += (i == 1 ? "" : i == f.n + 1 ? "; " : ", ") + ("x" + std::to_string(i));
    std::cout << "R[f](" << args << ") = " << r.str() << "\n";
    if (point.empty()) return Ok;
    auto x = parse_vector(point);
    if (x.size() != f.n) throw Usage_("point has " + std::to_string(x.size()) + " coordinates, f takes " + std::to_string(f.n));
    std::vector<double> t(f.m(), 1.0);
    if (!cotangent.empty()) {
        t = parse_vector(cotangent);
        if (t.size() != f.m())
            throw Usage_("cotangent has " + std::to_string(t.size()) + " coordinates, f has " + std::to_string(f.m()) + " outputs");
    }
    x.insert(x.end(), t.begin(), t.end());
    std::cout << format_vector(eval(r, x)) << "\n";
    return Ok;
}

int cmd_descend(const std::string& expr, const std::string& init, double lr, std::size_t steps, const std::string& out)
{
    if (expr.empty()) throw Usage_("descend needs --expr");
    if (lr < 0) throw Usage_("--lr must be non-negative");
    ExprMap loss = parse_expr(read_arg(expr));
    if (loss.m() != 1) throw Usage_("the loss must be scalar");
    std::vector<double> x = init.empty() ? std::vector<double>(loss.n, 0.0) : parse_vector(init);
    if (x.size() != loss.n) throw Usage_("--init has " + std::to_string(x.size()) + " coordinates, the loss takes " + std::to_string(loss.n));
    auto traj = gradient_descent(loss, x, lr, steps);
    if (!out.empty()) emit(out, format_trajectory(traj));
    const auto& last = traj.back();
    std::cout << "step " << last.step << " x = " << format_vector(last.x) << " loss = " << format_double(last.loss) << "\n";
    return Ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"reverse differential categories: law checks and differentiation"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Params p;
    std::string suite = "all", format = "text", out, map_name, expr, point, cotangent, init;
    double lr = 0.1;
    std::size_t steps = 100;

    auto model_opts = [&](CLI::App* c) {
        c->add_option("--model", p.model, "model")->check(CLI::IsMember(model_names()));
        c->add_option("--alphabet", p.alphabet, "size of the base alphabet (arity for poly and smooth)")->check(CLI::Range(1, 4));
        c->add_option("--n", p.n, "dimension for ext2")->check(CLI::Range(0, 4));
        c->add_option("--degree", p.degree, "degree cap D")->check(CLI::Range(1, 8));
        c->add_option("--outer", p.outer, "outer cap K")->check(CLI::Range(1, 6));
        c->add_option("--policy", p.policy, "coefficient policy")->check(CLI::IsMember(CoeffPolicy::names()));
        c->add_option("--seed", p.seed, "seed");
        c->add_option("--out", out, "output file");
    };

    auto* laws_cmd = app.add_subcommand("laws", "run a law suite");
    model_opts(laws_cmd);
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    laws_cmd->add_option("--suite", suite, "suite")->check(CLI::IsMember(suites));
    laws_cmd->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "structured"}));
    laws_cmd->add_option("--samples", p.samples, "random samples per law (0: default)");

    auto* dump_cmd = app.add_subcommand("dump", "dump a structure map as TSV");
    model_opts(dump_cmd);
    dump_cmd->add_option("--map", map_name, "map name")->required();
    dump_cmd->add_option("--expr", expr, "expression or file, for D_of and R_of");

    auto* rd_cmd = app.add_subcommand("rderive", "reverse derivative of an expression");
    rd_cmd->add_option("--expr", expr, "expression or file")->required();
    rd_cmd->add_option("--point", point, "evaluation point, comma separated");
    rd_cmd->add_option("--cotangent", cotangent, "cotangent, comma separated (default all ones)");

    auto* ds_cmd = app.add_subcommand("descend", "gradient descent on a scalar loss");
    ds_cmd->add_option("--expr", expr, "loss expression or file")->required();
    ds_cmd->add_option("--init", init, "initial point, comma separated (default origin)");
    ds_cmd->add_option("--lr", lr, "learning rate");
    ds_cmd->add_option("--steps", steps, "number of steps");
    ds_cmd->add_option("--out", out, "trajectory file");

    auto* cat_cmd = app.add_subcommand("catalog", "print the law catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        if (*laws_cmd) return cmd_laws(suite, p, format, out);
        if (*dump_cmd) {
            std::string text;
            if (map_name == "D_of" || map_name == "R_of" || is_cartesian_model(p.model)) {
                if (!is_cartesian_model(p.model)) throw Usage_(map_name + " needs --model poly or smooth");
                text = dump_symbolic(p, map_name, expr);
            } else if (std::find(kStructureMaps.begin(), kStructureMaps.end(), map_name) == kStructureMaps.end()) {
                throw Usage_("unknown map '" + map_name + "'");
            } else if (p.model == "rel") {
                text = dump_bag<Boolean>(p, map_name);
            } else if (p.model == "nat") {
                text = dump_bag<Natural>(p, map_name);
            } else if (p.model == "gf2rel") {
                text = dump_bag<GF2>(p, map_name);
            } else {
                ExtModality m;
                text = dump_tsv(structure_map<GF2>(m, map_name, Obj::vectors(p.n), Obj::vectors(1, "w")));
            }
            emit(out, text);
            return Ok;
        }
        if (*rd_cmd) return cmd_rderive(expr, point, cotangent);
        if (*ds_cmd) return cmd_descend(expr, init, lr, steps, out);
        if (*cat_cmd) {
            for (const auto& l : catalog())
                std::cout << l.suite << "\t" << l.id << "\t" << (l.cartesian ? show(l.clhs) : show(l.lhs)) << "\t=\t"
                          << (l.cartesian ? show(l.crhs) : show(l.rhs)) << "\t" << l.anchor << "\n";
            return Ok;
        }
    } catch (const Usage_& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Usage;
    } catch (const Divergence& e) {
        std::cerr << "diverged at step " << e.step << "\n";
        return Diverged;
    } catch (const NonFinite& e) {
        std::cerr << "non-finite value: " << e.what() << "\n";
        return Diverged;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    }
    return Ok;
}
