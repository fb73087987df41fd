// Acceptance run: one PASS/FAIL line per criterion.
// Exit status is 0 unless --strict is given and some criterion failed.
#include "rdc/bang.hpp"
#include "rdc/ext2.hpp"
#include "rdc/smooth.hpp"
#include "rdc/suite.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace rdc;
using namespace rdc::laws;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> detail;
    double secs = 0;

    Criterion(int i, std::string t) : id(i), title(std::move(t)) {}

    void fail(const std::string& why)
    {
        pass = false;
        detail.push_back(why);
    }
    void note(const std::string& s) { detail.push_back(s); }
};

Params params(std::string model)
{
    Params p;
    p.model = std::move(model);
    return p;
}

std::string fmt(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

// Tally a report list; failing and partial laws are listed.
void tally(Criterion& c, const std::vector<LawReport>& rs, const std::string& tag, bool skips_fail)
{
    std::size_t pass = 0, fail = 0, skip = 0, na = 0;
    for (const auto& r : rs) {
        switch (r.verdict) {
        case Verdict::Pass: ++pass; break;
        case Verdict::NotApplicable: ++na; break;
        case Verdict::Fail:
            ++fail;
            c.fail(tag + " " + r.law + " failed" + (r.cex ? " at row " + r.cex->row + " col " + r.cex->col + ": " + r.cex->lhs + " vs " + r.cex->rhs : ""));
            break;
        case Verdict::WindowSkippedPartial:
            ++skip;
            if (skips_fail) c.fail(tag + " " + r.law + " skipped " + std::to_string(r.skipped) + " entries");
            else if (r.sites.empty()) c.fail(tag + " " + r.law + " skipped entries without a trace");
            break;
        }
    }
    c.note(tag + ": " + std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, " + std::to_string(skip) + " window-skipped, " +
           std::to_string(na) + " not applicable");
}

Criterion worked_example()
{
    Criterion c{1, "worked example: R and D against closed forms, 25 points, 1e-12 relative, < 1 s"};
    auto t0 = Clock::now();
    ExprMap f = parse_expr("x1^2*x2 + sin(x2)");
    ExprMap r = R_expr(f), d = D_expr(f);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-3, 3);
    double worst = 0;
    for (int k = 0; k < 25; ++k) {
        double x1 = u(rng), x2 = u(rng), t = u(rng), v1 = u(rng), v2 = u(rng);
        auto g = eval(r, {x1, x2, t});
        auto dv = eval(d, {x1, x2, v1, v2});
        worst = std::max({worst, rel_err(g[0], 2 * x1 * x2 * t), rel_err(g[1], (x1 * x1 + std::cos(x2)) * t),
                          rel_err(dv[0], 2 * x1 * x2 * v1 + (x1 * x1 + std::cos(x2)) * v2)});
    }
    c.secs = seconds_since(t0);
    c.note("max relative error " + fmt(worst));
    if (worst > 1e-12) c.fail("relative error above 1e-12");
    if (c.secs >= 1) c.fail("runtime " + fmt(c.secs) + " s");
    return c;
}

Criterion exact_suite()
{
    Criterion c{2, "ext2 exact suite: all at n=2, non-coKleisli suites at n=3, no fails or skips, < 60 s"};
    auto t0 = Clock::now();
    Params p = params("ext2");
    p.n = 2;
    tally(c, run_suite("all", p), "n=2", true);
    p.n = 3;
    for (auto s : {"modality", "bialgebra", "differential", "reverse", "compact", "seely", "fibration"}) tally(c, run_suite(s, p), std::string("n=3 ") + s, true);
    c.secs = seconds_since(t0);
    if (c.secs >= 60) c.fail("runtime " + fmt(c.secs) + " s");
    return c;
}

Criterion boolean_suite()
{
    Criterion c{3, "Boolean REL: six monoidal suites at alphabet 1 and 2, D=3, K=2; skips carry traces; < 5 min"};
    auto t0 = Clock::now();
    for (std::size_t a : {1, 2}) {
        Params p = params("rel");
        p.alphabet = a;
        p.degree = 3;
        p.outer = 2;
        for (auto s : {"modality", "bialgebra", "differential", "reverse", "compact", "seely"})
            tally(c, run_suite(s, p), "alphabet=" + std::to_string(a) + " " + s, false);
    }
    c.secs = seconds_since(t0);
    if (c.secs >= 300) c.fail("runtime " + fmt(c.secs) + " s");
    return c;
}

Criterion roundtrips()
{
    Criterion c{4, "d <-> r roundtrips exact on Boolean D=3 and ext2 n <= 3"};
    auto t0 = Clock::now();
    BagModality<Boolean> b({3, 2, CoeffPolicy::named("default")});
    for (std::size_t a : {1, 2, 3}) {
        Obj o = Obj::alphabet(a);
        if (!mor_equal(r_from_d(b, b.d(o), o), b.r(o)).equal) c.fail("Boolean alphabet " + std::to_string(a) + ": r_from_d(d) != r");
        if (!mor_equal(d_from_r(b, r_from_d(b, b.d(o), o), o), b.d(o)).equal)
            c.fail("Boolean alphabet " + std::to_string(a) + ": d_from_r(r_from_d(d)) != d");
    }
    ExtModality e;
    for (std::size_t n : {1, 2, 3}) {
        Obj o = Obj::vectors(n);
        if (!mor_equal(r_from_d(e, e.d(o), o), e.r(o)).equal) c.fail("ext2 n=" + std::to_string(n) + ": r_from_d(d) != r");
        if (!mor_equal(d_from_r(e, r_from_d(e, e.d(o), o), o), e.d(o)).equal) c.fail("ext2 n=" + std::to_string(n) + ": d_from_r(r_from_d(d)) != d");
    }
    c.secs = seconds_since(t0);
    return c;
}

void check_laws(Criterion& c, const std::vector<std::string>& ids, const Params& p, const std::string& tag, std::size_t min_samples)
{
    for (const auto& id : ids) {
        auto r = check_law(id, p);
        if (r.verdict != Verdict::Pass) c.fail(tag + " " + id + ": " + to_string(r.verdict) + (r.note.empty() ? "" : " (" + r.note + ")"));
        if (r.samples < min_samples) c.fail(tag + " " + id + ": only " + std::to_string(r.samples) + " samples");
        c.note(tag + " " + id + ": " + to_string(r.verdict) + ", " + std::to_string(r.samples) + " samples, " + std::to_string(r.compared) +
               " entries");
    }
}

Criterion three_way()
{
    Criterion c{5, "three R constructions agree on >= 20 KlMors (Boolean |A|=|B|=1, ext2 n=2); CRDC -> CDC roundtrip"};
    auto t0 = Clock::now();
    std::vector<std::string> ids{"R_three_way.dagger", "R_three_way.cupcap", "crdc_to_cdc"};
    Params b = params("rel");
    b.alphabet = 1;
    b.degree = 3;
    check_laws(c, ids, b, "Boolean", 20);
    Params e = params("ext2");
    e.n = 2;
    check_laws(c, ids, e, "ext2", 20);
    c.secs = seconds_since(t0);
    return c;
}

Criterion fibration()
{
    Criterion c{6, "fibration: E roundtrips, dagger involution, contravariance, change of base, pi dagger = iota on >= 20 CtxMors"};
    auto t0 = Clock::now();
    std::vector<std::string> sampled{"E_roundtrip.ctx", "E_roundtrip.kl", "dagger_involution", "dagger_contravariant", "dagger_change_of_base"};
    Params b = params("rel");
    Params e = params("ext2");
    e.n = 2;
    check_laws(c, sampled, b, "Boolean", 20);
    check_laws(c, sampled, e, "ext2", 20);
    check_laws(c, {"dagger_biproduct"}, b, "Boolean", 1);
    check_laws(c, {"dagger_biproduct"}, e, "ext2", 1);
    c.secs = seconds_since(t0);
    return c;
}

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args)
{
    std::string cmd = std::string(RDC_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t k = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), k);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

Criterion negative_controls()
{
    Criterion c{7, "negative controls: both-multinomial bimonoid fails 4 vs 2; d-const-one fails d.2; CLI exits 1"};
    auto t0 = Clock::now();
    Params p = params("nat");
    p.policy = "both-multinomial";
    p.degree = 2;
    auto r = check_law("bimonoid", p);
    if (r.verdict != Verdict::Fail) c.fail("bimonoid under both-multinomial: " + to_string(r.verdict));
    else if (!r.cex || r.cex->lhs != "4" || r.cex->rhs != "2") c.fail("bimonoid counterexample is not 4 vs 2");
    else c.note("bimonoid: row " + r.cex->row + " col " + r.cex->col + " lhs " + r.cex->lhs + " rhs " + r.cex->rhs);
    Params q = params("nat");
    q.policy = "d-const-one";
    auto s = check_law("d.2", q);
    if (s.verdict != Verdict::Fail) c.fail("d.2 under d-const-one: " + to_string(s.verdict));
    else if (s.cex) c.note("d.2: row " + s.cex->row + " col " + s.cex->col + " lhs " + s.cex->lhs + " rhs " + s.cex->rhs);
    auto a = run_cli("laws --suite bialgebra --model nat --policy both-multinomial --degree 2");
    if (a.code != 1) c.fail("CLI bimonoid control exited " + std::to_string(a.code));
    if (a.out.find("fail\tbimonoid") == std::string::npos) c.fail("CLI report does not list bimonoid as fail");
    auto b = run_cli("laws --suite differential --model nat --policy d-const-one");
    if (b.code != 1) c.fail("CLI d.2 control exited " + std::to_string(b.code));
    if (b.out.find("fail\td.2") == std::string::npos) c.fail("CLI report does not list d.2 as fail");
    c.secs = seconds_since(t0);
    return c;
}

bool is_rd_or_cd(const std::string& id) { return id.rfind("RD.", 0) == 0 || id.rfind("CD.", 0) == 0; }

// closed laws (no map variables) are a single fixed instance
bool has_vars(const std::string& id)
{
    const LawSpec* l = find_law(id);
    return l && !l->cvars.empty();
}

Criterion poly()
{
    Criterion c{8, "POLY: RD.1-7 and CD.1-7 exact on 50 seeded maps, arity 1..3, degree <= 3, < 2 min"};
    auto t0 = Clock::now();
    for (std::size_t a : {1, 2, 3}) {
        Params p = params("poly");
        p.alphabet = a;
        p.samples = 50;
        p.seed = 8;
        std::size_t checked = 0;
        for (auto s : {"cokleisli_rd", "cokleisli_cd"})
            for (const auto& r : run_suite(s, p)) {
                if (!is_rd_or_cd(r.law)) continue;
                ++checked;
                if (r.verdict != Verdict::Pass) c.fail("arity " + std::to_string(a) + " " + r.law + ": " + to_string(r.verdict));
                if (has_vars(r.law) && r.samples < 50) c.fail("arity " + std::to_string(a) + " " + r.law + ": " + std::to_string(r.samples) + " samples");
            }
        c.note("arity " + std::to_string(a) + ": " + std::to_string(checked) + " laws checked");
    }
    c.secs = seconds_since(t0);
    if (c.secs >= 120) c.fail("runtime " + fmt(c.secs) + " s");
    return c;
}

Criterion smooth()
{
    Criterion c{9, "SMOOTH: fd check <= 1e-5 on 100 maps; RD.1-5 within 1e-9 at 100 points; RD.6-7 within 1e-7 at 20 points"};
    auto t0 = Clock::now();
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2, 2);
    std::uniform_int_distribution<std::size_t> ar(1, 3);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        std::size_t n = ar(rng);
        ExprMap f = random_expr_map(n, 1, rng, 4);
        std::vector<double> x(n);
        for (auto& v : x) v = u(rng);
        double e = fd_gradient_check(f, x);
        worst = std::max(worst, e);
        if (e > 1e-5) c.fail("fd check " + fmt(e) + " on " + f.str());
    }
    c.note("fd check: max relative error " + fmt(worst) + " over 100 maps");
    // 10 samples x 10 points = 100 points for RD.1-5; 5 samples x 4 points = 20 for the nested laws
    for (std::size_t a : {1, 2}) {
        Params p = params("smooth");
        p.alphabet = a;
        p.seed = 9;
        p.samples = 10;
        p.points = 10;
        Params q = p;
        q.samples = 5;
        q.points = 8;
        Params closed = p;
        closed.samples = 1;
        closed.points = 100;
        for (auto r : run_suite("cokleisli_rd", p)) {
            if (!is_rd_or_cd(r.law) || r.law == "RD.6" || r.law == "RD.7") continue;
            if (!has_vars(r.law)) r = check_law(r.law, closed);
            if (r.verdict != Verdict::Pass) c.fail("arity " + std::to_string(a) + " " + r.law + ": " + to_string(r.verdict));
            if (r.compared < 100) c.fail("arity " + std::to_string(a) + " " + r.law + ": " + std::to_string(r.compared) + " comparisons");
        }
        for (auto id : {"RD.6", "RD.7"}) {
            auto r = check_law(id, q);
            if (r.verdict != Verdict::Pass) c.fail("arity " + std::to_string(a) + " " + id + ": " + to_string(r.verdict));
            if (r.compared < 20) c.fail("arity " + std::to_string(a) + " " + id + ": " + std::to_string(r.compared) + " comparisons");
        }
    }
    c.secs = seconds_since(t0);
    return c;
}

Criterion descent()
{
    Criterion c{10, "descent: (x-3)^2+(y+1)^2 from (0,0), lr 0.1, within 1e-6 of (3,-1) in <= 500 steps; byte-identical trajectory"};
    auto t0 = Clock::now();
    ExprMap loss = parse_expr("(x1 - 3)^2 + (x2 + 1)^2");
    auto traj = gradient_descent(loss, {0.0, 0.0}, 0.1, 500);
    std::size_t hit = 0;
    for (const auto& s : traj)
        if (std::abs(s.x[0] - 3) <= 1e-6 && std::abs(s.x[1] + 1) <= 1e-6) {
            hit = s.step;
            break;
        }
    if (!hit) c.fail("not within 1e-6 after 500 steps");
    else c.note("within 1e-6 at step " + std::to_string(hit));
    auto dir = std::filesystem::temp_directory_path();
    std::string p1 = (dir / "rdc_acceptance_traj1.tsv").string(), p2 = (dir / "rdc_acceptance_traj2.tsv").string();
    auto r1 = run_cli("descend --expr '(x1 - 3)^2 + (x2 + 1)^2' --init 0,0 --lr 0.1 --steps 500 --out " + p1);
    auto r2 = run_cli("descend --expr '(x1 - 3)^2 + (x2 + 1)^2' --init 0,0 --lr 0.1 --steps 500 --out " + p2);
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    std::string a = slurp(p1), b = slurp(p2);
    if (r1.code != 0 || r2.code != 0) c.fail("CLI descend exited " + std::to_string(r1.code) + "/" + std::to_string(r2.code));
    if (a.empty() || a != b) c.fail("trajectory files differ");
    if (a != format_trajectory(traj)) c.fail("CLI trajectory differs from the library trajectory");
    else c.note("trajectory: " + std::to_string(a.size()) + " bytes, identical across two runs");
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
    c.secs = seconds_since(t0);
    return c;
}

}  // namespace

int main(int argc, char** argv)
{
    bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    std::vector<Criterion (*)()> all{worked_example, exact_suite, boolean_suite, roundtrips, three_way, fibration, negative_controls, poly, smooth, descent};
    std::size_t failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        Criterion c{int(i + 1), "criterion " + std::to_string(i + 1)};
        try {
            c = all[i]();
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        failed += !c.pass;
        std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.title << "  [" << fmt(c.secs) << " s]\n";
        for (const auto& d : c.detail) std::cout << "      " << d << "\n";
        std::cout.flush();
    }
    std::cout << (all.size() - failed) << "/" << all.size() << " criteria pass\n";
    return strict && failed ? 1 : 0;
}
