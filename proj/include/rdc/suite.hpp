#pragma once

#include "bang.hpp"
#include "ext2.hpp"
#include "laws.hpp"
#include "poly.hpp"
#include "smooth.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace rdc::laws {

struct Params {
    std::string model = "rel";
    std::size_t alphabet = 2;  // |A| for bag models, arity of A for poly and smooth
    std::size_t n = 2;         // dimension for ext2
    std::size_t degree = 3;    // D
    std::size_t outer = 2;     // K
    std::string policy = "default";
    std::uint64_t seed = 0;
    std::size_t samples = 0;   // 0 selects the per-suite default
    std::size_t points = 10;   // numeric comparison points per smooth instance
};

inline const std::vector<std::string>& model_names()
{
    static const std::vector<std::string> m{"rel", "nat", "gf2rel", "ext2", "poly", "smooth"};
    return m;
}

inline bool is_cartesian_model(const std::string& m) { return m == "poly" || m == "smooth"; }

inline bool suite_supported(const std::string& suite, const std::string& model)
{
    if (!is_cartesian_model(model)) return true;
    return suite == "cokleisli_cd" || suite == "cokleisli_rd" || suite == "all";
}

inline std::string params_string(const Params& p)
{
    std::ostringstream s;
    if (p.model == "ext2")
        s << "n=" << p.n;
    else if (is_cartesian_model(p.model))
        s << "arity=" << p.alphabet;
    else
        s << "alphabet=" << p.alphabet << " D=" << p.degree << " K=" << p.outer << " policy=" << p.policy;
    s << " seed=" << p.seed;
    if (p.samples) s << " samples=" << p.samples;
    return s.str();
}

namespace detail {

inline std::uint64_t law_seed(std::uint64_t seed, const std::string& id)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : id) h = (h ^ c) * 1099511628211ull;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(h),
                      static_cast<std::uint32_t>(h >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (std::uint64_t{out[0]} << 32) | out[1];
}

inline std::size_t default_samples(const LawSpec& law, const Params& p)
{
    if (p.samples) return p.samples;
    if (law.suite == "cokleisli_cd" || law.suite == "cokleisli_rd" || law.suite == "fibration") {
        if (p.model == "poly") return 50;
        if (p.model == "smooth") return law.nested ? 4 : 10;
        return law.nested ? 6 : 20;
    }
    return 8;
}

inline std::vector<const LawSpec*> select(const std::string& suite, const std::string& model)
{
    std::vector<const LawSpec*> out;
    for (const auto& l : catalog()) {
        if (suite != "all" && l.suite != suite) continue;
        if (is_cartesian_model(model) && !l.cartesian) continue;
        out.push_back(&l);
    }
    return out;
}

template <Semiring S>
struct MonoidalModel {
    const Modality<S>& m;
    std::map<std::string, Obj> objs;   // A, B, X, Y
    std::map<std::string, Obj> cobjs;  // A, B, C for coKleisli laws
    std::map<std::string, Obj> nested; // objects for the triply nested laws
    std::size_t window;                // support bound of sampled coKleisli maps
};

template <Semiring S>
LawReport run_one(const LawSpec& law, const MonoidalModel<S>& mm, const Params& p)
{
    LawReport rep;
    rep.law = law.id;
    rep.suite = law.suite;
    rep.model = p.model;
    rep.params = params_string(p);
    Rng rng(law_seed(p.seed, law.id));
    try {
        if (!law.cartesian) {
            MonoidalSetup<S> setup;
            setup.model = &mm.m;
            setup.objs = mm.objs;
            setup.samples = default_samples(law, p);
            check_monoidal(law, setup, rng, rep);
        } else {
            KlCat<S> cat(mm.m);
            const auto& objs = law.nested ? mm.nested : mm.cobjs;
            std::size_t W = mm.window;
            std::size_t samples = default_samples(law, p);
            auto rows_of = [&](const Obj& dom) {
                std::vector<Label> rows;
                for (auto l : mm.m.bang(dom).basis())
                    if (mm.m.exact() || l.size() <= W) rows.push_back(l);
                return rows;
            };
            auto sample = [&](const Obj& dom, const Obj& cod, Rng& r, std::size_t i) {
                auto rows = rows_of(dom);
                auto cols = cod.basis();
                Obj bd = mm.m.bang(dom);
                std::size_t bound = mm.m.exact() ? 0 : W;
                if (i >= samples) {
                    std::size_t k = i - samples;
                    return KlMor<S>{dom, cod, basis_mor<S>(bd, cod, rows[k / cols.size()], cols[k % cols.size()]), bound};
                }
                return KlMor<S>{dom, cod, random_mor<S>(bd, cod, rows, cols, r), bound};
            };
            std::size_t extra = 0;
            if (law.cvars.size() == 1) {
                CEnv<KlCat<S>> tmp;
                tmp.cat = &cat;
                tmp.objs = objs;
                Obj d = cresolve(law.cvars[0].dom, tmp), c = cresolve(law.cvars[0].cod, tmp);
                std::size_t cnt = rows_of(d).size() * c.basis().size();
                if (cnt <= 16) extra = cnt;
            }
            auto outcome = [&](const CT& l, const CT& r, const CEnv<KlCat<S>>& env) {
                auto build = [&] {
                    auto a = ceval(l, env, "lhs"), b = ceval(r, env, "rhs");
                    if (!(a.dom == b.dom) || !(a.cod == b.cod))
                        throw EvalError("$", "sides differ in type: " + a.dom.name() + " -> " + a.cod.name() + " vs " + b.dom.name() +
                                                 " -> " + b.cod.name());
                    return std::pair{a.body, b.body};
                };
                return leveled_compare<S>(build);
            };
            auto describe = [](const KlMor<S>& f) { return describe_mor(f.body); };
            check_cartesian(law, cat, objs, samples, extra, rng, sample, outcome, describe, rep);
        }
    } catch (const EvalError& e) {
        rep.verdict = Verdict::Fail;
        rep.note = std::string("term does not type-check: ") + e.what();
        rep.cex = Counterexample{"", e.path, "", "ill-typed", ""};
    }
    finish(rep);
    return rep;
}

inline LawReport run_poly(const LawSpec& law, const Params& p)
{
    LawReport rep;
    rep.law = law.id;
    rep.suite = law.suite;
    rep.model = p.model;
    rep.params = params_string(p);
    Rng rng(law_seed(p.seed, law.id));
    PolyCat cat;
    std::map<std::string, Shape> objs{{"A", Shape::leaf(p.alphabet)}, {"B", Shape::leaf(2)}, {"C", Shape::leaf(1)}};
    auto sample = [](const Shape& d, const Shape& c, Rng& r, std::size_t) { return PolyCat::Map{d, c, random_poly_map(d.n, c.n, r)}; };
    auto outcome = [&](const CT& l, const CT& r, const CEnv<PolyCat>& env) {
        auto a = ceval(l, env, "lhs"), b = ceval(r, env, "rhs");
        Outcome o;
        if (a.f.n != b.f.n || a.f.m() != b.f.m()) throw EvalError("$", "sides differ in arity");
        for (std::size_t i = 0; i < a.f.m(); ++i) {
            ++o.compared;
            if (!(a.f.comps[i] == b.f.comps[i]) && o.equal) {
                o.equal = false;
                o.cex = Counterexample{{}, "component " + std::to_string(i + 1), "", a.f.comps[i].str(), b.f.comps[i].str()};
            }
        }
        return o;
    };
    auto describe = [](const PolyCat::Map& f) { return f.f.str(); };
    try {
        check_cartesian(law, cat, objs, default_samples(law, p), 0, rng, sample, outcome, describe, rep);
    } catch (const EvalError& e) {
        rep.verdict = Verdict::Fail;
        rep.note = std::string("term does not type-check: ") + e.what();
        rep.cex = Counterexample{"", e.path, "", "ill-typed", ""};
    }
    finish(rep);
    return rep;
}

inline LawReport run_smooth(const LawSpec& law, const Params& p)
{
    LawReport rep;
    rep.law = law.id;
    rep.suite = law.suite;
    rep.model = p.model;
    rep.params = params_string(p);
    Rng rng(law_seed(p.seed, law.id));
    ExprCat cat;
    std::map<std::string, Shape> objs{{"A", Shape::leaf(p.alphabet)}, {"B", Shape::leaf(2)}, {"C", Shape::leaf(1)}};
    double tol = law.nested ? 1e-7 : 1e-9;
    std::size_t points = law.nested ? std::max<std::size_t>(1, p.points / 2) : p.points;
    auto sample = [](const Shape& d, const Shape& c, Rng& r, std::size_t) { return ExprCat::Map{d, c, random_expr_map(d.n, c.n, r, 3)}; };
    auto outcome = [&](const CT& l, const CT& r, const CEnv<ExprCat>& env) {
        auto a = ceval(l, env, "lhs"), b = ceval(r, env, "rhs");
        if (a.f.n != b.f.n || a.f.m() != b.f.m()) throw EvalError("$", "sides differ in arity");
        Outcome o;
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (std::size_t k = 0; k < points; ++k) {
            std::vector<double> x(a.f.n);
            for (auto& v : x) v = u(rng);
            std::vector<double> va, vb;
            try {
                va = eval(a.f, x);
                vb = eval(b.f, x);
            } catch (const NonFinite&) {
                ++o.skipped;
                o.sites.insert("non-finite value at a sampled point");
                continue;
            }
            for (std::size_t i = 0; i < va.size(); ++i) {
                ++o.compared;
                double err = std::abs(va[i] - vb[i]) / std::max({std::abs(va[i]), std::abs(vb[i]), 1.0});
                if (err > tol && o.equal) {
                    o.equal = false;
                    std::string pt = "(";
                    for (std::size_t j = 0; j < x.size(); ++j) pt += (j ? "," : "") + format_double(x[j]);
                    o.cex = Counterexample{{}, pt + ")", "component " + std::to_string(i + 1), format_double(va[i]), format_double(vb[i])};
                }
            }
        }
        return o;
    };
    auto describe = [](const ExprCat::Map& f) { return f.f.str(); };
    try {
        check_cartesian(law, cat, objs, default_samples(law, p), 0, rng, sample, outcome, describe, rep);
    } catch (const EvalError& e) {
        rep.verdict = Verdict::Fail;
        rep.note = std::string("term does not type-check: ") + e.what();
        rep.cex = Counterexample{"", e.path, "", "ill-typed", ""};
    }
    finish(rep);
    return rep;
}

template <Semiring S>
std::vector<LawReport> run_monoidal(const std::vector<const LawSpec*>& laws, const MonoidalModel<S>& mm, const Params& p)
{
    std::vector<LawReport> out;
    for (const auto* l : laws) {
        auto t0 = std::chrono::steady_clock::now();
        LawReport r = run_one(*l, mm, p);
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

template <Semiring S>
MonoidalModel<S> bag_model(const BagModality<S>& m, const Params& p)
{
    std::vector<std::string> bnames{"p", "q"};
    bnames.resize(std::min<std::size_t>(2, std::max<std::size_t>(1, p.alphabet)));
    Obj A = Obj::alphabet(p.alphabet), B = Obj::atoms(bnames), X = Obj::atoms({"x"}), Y = Obj::atoms({"y"});
    MonoidalModel<S> mm{m, {{"A", A}, {"B", B}, {"X", X}, {"Y", Y}}, {}, {}, p.degree};
    mm.cobjs = {{"A", A}, {"B", Obj::atoms({"p"})}, {"C", Obj::atoms({"s"})}};
    mm.nested = {{"A", Obj::alphabet(1)}, {"B", Obj::atoms({"p"})}, {"C", Obj::atoms({"s"})}};
    return mm;
}

inline MonoidalModel<GF2> ext_model(const ExtModality& m, const Params& p)
{
    Obj A = Obj::vectors(p.n), B = Obj::vectors(1, "w"), X = Obj::vectors(1, "x"), Y = Obj::vectors(1, "y");
    MonoidalModel<GF2> mm{m, {{"A", A}, {"B", B}, {"X", X}, {"Y", Y}}, {}, {}, 0};
    mm.cobjs = {{"A", A}, {"B", B}, {"C", Obj::vectors(1, "u")}};
    mm.nested = mm.cobjs;
    return mm;
}

}  // namespace detail

// Runs every law of the suite against the model; reports are sorted by law id.
inline std::vector<LawReport> run_suite(const std::string& suite, const Params& p)
{
    if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw std::invalid_argument("unknown suite " + suite);
    if (std::find(model_names().begin(), model_names().end(), p.model) == model_names().end())
        throw std::invalid_argument("unknown model " + p.model);
    if (!suite_supported(suite, p.model)) throw std::invalid_argument("suite " + suite + " does not apply to model " + p.model);
    auto laws = detail::select(suite, p.model);
    std::vector<LawReport> out;
    BangConfig cfg{p.degree, p.outer, CoeffPolicy::named(p.policy)};
    if (p.model == "rel") {
        BagModality<Boolean> m(cfg);
        out = detail::run_monoidal(laws, detail::bag_model(m, p), p);
    } else if (p.model == "nat") {
        BagModality<Natural> m(cfg);
        out = detail::run_monoidal(laws, detail::bag_model(m, p), p);
    } else if (p.model == "gf2rel") {
        BagModality<GF2> m(cfg);
        out = detail::run_monoidal(laws, detail::bag_model(m, p), p);
    } else if (p.model == "ext2") {
        ExtModality m;
        out = detail::run_monoidal(laws, detail::ext_model(m, p), p);
    } else {
        for (const auto* l : laws) {
            auto t0 = std::chrono::steady_clock::now();
            LawReport r = p.model == "poly" ? detail::run_poly(*l, p) : detail::run_smooth(*l, p);
            r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), [](const LawReport& a, const LawReport& b) { return a.law < b.law; });
    return out;
}

inline LawReport check_law(const std::string& id, const Params& p)
{
    const LawSpec* l = find_law(id);
    if (!l) throw std::invalid_argument("unknown law " + id);
    auto all = run_suite(l->suite, p);
    for (auto& r : all)
        if (r.law == id) return r;
    LawReport r;
    r.law = id;
    r.suite = l->suite;
    r.model = p.model;
    r.params = params_string(p);
    r.verdict = Verdict::NotApplicable;
    r.note = "law does not apply to this model";
    return r;
}

inline bool any_fail(const std::vector<LawReport>& rs)
{
    return std::any_of(rs.begin(), rs.end(), [](const LawReport& r) { return r.verdict == Verdict::Fail; });
}

// ---------------------------------------------------------------- rendering

inline std::string render_text(const std::vector<LawReport>& rs)
{
    std::ostringstream s;
    std::map<Verdict, std::size_t> count;
    for (const auto& r : rs) {
        ++count[r.verdict];
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.1f", r.wall_ms);
        s << to_string(r.verdict) << "\t" << r.law << "\tcompared=" << r.compared << "\tskipped=" << r.skipped
          << "\tsamples=" << r.samples << "\t" << ms << " ms\n";
        if (r.cex) {
            s << "  counterexample: row " << r.cex->row;
            if (!r.cex->col.empty()) s << " col " << r.cex->col;
            s << ": lhs " << r.cex->lhs << " vs rhs " << r.cex->rhs << "\n";
            if (!r.cex->sample.empty()) s << "  sample: " << r.cex->sample << "\n";
        }
        if (r.skipped)
            for (const auto& site : r.sites) s << "  window-skip trace: " << site << "\n";
        if (!r.note.empty()) s << "  note: " << r.note << "\n";
    }
    s << "summary: " << rs.size() << " laws, " << count[Verdict::Pass] << " pass, " << count[Verdict::Fail] << " fail, "
      << count[Verdict::WindowSkippedPartial] << " window-skipped-partial, " << count[Verdict::NotApplicable] << " not-applicable\n";
    return s.str();
}

inline nlohmann::json to_json(const LawReport& r)
{
    nlohmann::json j{{"law", r.law},         {"suite", r.suite},     {"model", r.model},     {"params", r.params},
                     {"verdict", to_string(r.verdict)}, {"compared", r.compared}, {"skipped", r.skipped}, {"samples", r.samples},
                     {"wall_ms", r.wall_ms}, {"sites", r.sites},     {"note", r.note}};
    if (r.cex)
        j["counterexample"] = {{"sample", r.cex->sample}, {"row", r.cex->row}, {"col", r.cex->col}, {"lhs", r.cex->lhs}, {"rhs", r.cex->rhs}};
    else
        j["counterexample"] = nullptr;
    return j;
}

inline LawReport report_from_json(const nlohmann::json& j)
{
    LawReport r;
    r.law = j.at("law");
    r.suite = j.at("suite");
    r.model = j.at("model");
    r.params = j.at("params");
    std::string v = j.at("verdict");
    for (auto c : {Verdict::Pass, Verdict::Fail, Verdict::WindowSkippedPartial, Verdict::NotApplicable})
        if (to_string(c) == v) r.verdict = c;
    r.compared = j.at("compared");
    r.skipped = j.at("skipped");
    r.samples = j.at("samples");
    r.wall_ms = j.at("wall_ms");
    r.sites = j.at("sites").get<std::set<std::string>>();
    r.note = j.at("note");
    if (!j.at("counterexample").is_null()) {
        const auto& c = j.at("counterexample");
        r.cex = Counterexample{c.at("sample"), c.at("row"), c.at("col"), c.at("lhs"), c.at("rhs")};
    }
    return r;
}

inline std::string render_structured(const std::string& suite, const Params& p, const std::vector<LawReport>& rs)
{
    nlohmann::json doc;
    doc["format"] = "rdc-law-report/1";
    doc["suite"] = suite;
    doc["model"] = p.model;
    doc["params"] = {{"alphabet", p.alphabet}, {"n", p.n}, {"degree", p.degree}, {"outer", p.outer},
                     {"policy", p.policy},     {"seed", p.seed}, {"samples", p.samples}};
    doc["reports"] = nlohmann::json::array();
    for (const auto& r : rs) doc["reports"].push_back(to_json(r));
    doc["failed"] = any_fail(rs);
    return doc.dump(2) + "\n";
}

inline std::vector<LawReport> parse_structured(const std::string& text)
{
    auto doc = nlohmann::json::parse(text);
    std::vector<LawReport> out;
    for (const auto& j : doc.at("reports")) out.push_back(report_from_json(j));
    return out;
}

}  // namespace rdc::laws
