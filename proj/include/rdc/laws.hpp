#pragma once

#include "sample.hpp"
#include "terms.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rdc::laws {

enum class Verdict { Pass, Fail, WindowSkippedPartial, NotApplicable };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::WindowSkippedPartial: return "window-skipped-partial";
    case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

struct Counterexample {
    std::string sample;  // the variable assignment
    std::string row, col;
    std::string lhs, rhs;
};

// Result of comparing the two sides of one instance.
struct Outcome {
    bool equal = true;
    std::size_t compared = 0, skipped = 0;
    std::set<std::string> sites;
    std::optional<Counterexample> cex;
};

struct LawReport {
    std::string law, suite, model, params;
    Verdict verdict = Verdict::Pass;
    std::optional<Counterexample> cex;
    std::size_t compared = 0, skipped = 0, samples = 0;
    std::set<std::string> sites;
    double wall_ms = 0;
    std::string note;
};

struct MVar {
    std::string name;
    O dom, cod;
};
struct CVar {
    std::string name;
    CO dom, cod;
};

struct LawSpec {
    std::string id, suite, anchor;
    bool cartesian = false;
    T lhs, rhs;
    std::vector<MVar> vars;
    CT clhs, crhs;
    std::vector<CVar> cvars;
    bool nested = false;  // triply nested R: small objects on truncated models, looser numeric tolerance
};

// ---------------------------------------------------------------- catalog

namespace detail {

inline LawSpec mono(std::string id, std::string suite, std::string anchor, T l, T r, std::vector<MVar> vars = {})
{
    LawSpec s;
    s.id = std::move(id);
    s.suite = std::move(suite);
    s.anchor = std::move(anchor);
    s.lhs = std::move(l);
    s.rhs = std::move(r);
    s.vars = std::move(vars);
    return s;
}

inline LawSpec cart(std::string id, std::string suite, std::string anchor, CT l, CT r, std::vector<CVar> vars, bool nested = false)
{
    LawSpec s;
    s.id = std::move(id);
    s.suite = std::move(suite);
    s.anchor = std::move(anchor);
    s.cartesian = true;
    s.clhs = std::move(l);
    s.crhs = std::move(r);
    s.cvars = std::move(vars);
    s.nested = nested;
    return s;
}

inline void modality_laws(std::vector<LawSpec>& out)
{
    using namespace t;
    O A = ovar("A"), B = ovar("B"), bA = obang(A), bB = obang(B), bbA = obang(bA), k = ounit();
    T f = var("f"), g = var("g");
    MVar fv{"f", A, B}, gv{"g", B, A};
    const std::string s = "modality";
    out.push_back(mono("comonad.counit_left", s, "comonad counit", seq({delta(A), eps(bA)}), id(bA)));
    out.push_back(mono("comonad.counit_right", s, "comonad counit", seq({delta(A), bang(eps(A))}), id(bA)));
    out.push_back(mono("comonad.coassoc", s, "comonad associativity", seq({delta(A), delta(bA)}), seq({delta(A), bang(delta(A))})));
    out.push_back(mono("comonoid.counit_left", s, "cocommutative comonoid",
                       seq({comult(A), ten(counit(A), id(bA)), rewire(oten(k, bA), bA)}), id(bA)));
    out.push_back(mono("comonoid.counit_right", s, "cocommutative comonoid",
                       seq({comult(A), ten(id(bA), counit(A)), rewire(oten(bA, k), bA)}), id(bA)));
    out.push_back(mono("comonoid.coassoc", s, "cocommutative comonoid", seq({comult(A), ten(comult(A), id(bA))}),
                       seq({comult(A), ten(id(bA), comult(A)), rewire(oten(bA, oten(bA, bA)), oten(oten(bA, bA), bA))})));
    out.push_back(mono("comonoid.cocomm", s, "cocommutative comonoid", seq({comult(A), sym(bA, bA)}), comult(A)));
    out.push_back(mono("coalgebra.delta_comonoid", s, "delta is a comonoid morphism", seq({delta(A), comult(bA)}),
                       seq({comult(A), ten(delta(A), delta(A))})));
    out.push_back(mono("coalgebra.delta_counit", s, "delta is a comonoid morphism", seq({delta(A), counit(bA)}), counit(A)));
    out.push_back(mono("natural.eps", s, "eps natural", seq({bang(f), eps(B)}), seq({eps(A), f}), {fv}));
    out.push_back(mono("natural.delta", s, "delta natural", seq({delta(A), bang(bang(f))}), seq({bang(f), delta(B)}), {fv}));
    out.push_back(mono("natural.comult", s, "!f is a comonoid morphism", seq({bang(f), comult(B)}),
                       seq({comult(A), ten(bang(f), bang(f))}), {fv}));
    out.push_back(mono("natural.counit", s, "!f is a comonoid morphism", seq({bang(f), counit(B)}), counit(A), {fv}));
    out.push_back(mono("functor.id", s, "! is a functor", bang(id(A)), id(bA)));
    out.push_back(mono("functor.compose", s, "! is a functor", bang(seq({f, g})), seq({bang(f), bang(g)}), {fv, gv}));
    (void)bB;
    (void)bbA;
}

inline void bialgebra_laws(std::vector<LawSpec>& out)
{
    using namespace t;
    O A = ovar("A"), B = ovar("B"), bA = obang(A), k = ounit();
    T f = var("f"), g = var("g");
    MVar fv{"f", A, B}, gv{"g", A, B};
    const std::string s = "bialgebra";
    O bb = oten(bA, bA);
    out.push_back(mono("monoid.unit_left", s, "bimonoid", seq({rewire(bA, oten(k, bA)), ten(unit(A), id(bA)), nabla(A)}), id(bA)));
    out.push_back(mono("monoid.unit_right", s, "bimonoid", seq({rewire(bA, oten(bA, k)), ten(id(bA), unit(A)), nabla(A)}), id(bA)));
    out.push_back(mono("monoid.assoc", s, "bimonoid", seq({ten(nabla(A), id(bA)), nabla(A)}),
                       seq({rewire(oten(bb, bA), oten(bA, bb)), ten(id(bA), nabla(A)), nabla(A)})));
    out.push_back(mono("monoid.comm", s, "bimonoid", seq({sym(bA, bA), nabla(A)}), nabla(A)));
    out.push_back(mono("bimonoid", s, "!A is a bimonoid", seq({nabla(A), comult(A)}),
                       seq({ten(comult(A), comult(A)), rewire(oten(bb, bb), oten(bb, bb), {0, 2, 1, 3}), ten(nabla(A), nabla(A))})));
    out.push_back(mono("bimonoid.unit_comult", s, "!A is a bimonoid", seq({unit(A), comult(A)}),
                       seq({rewire(k, oten(k, k)), ten(unit(A), unit(A))})));
    out.push_back(mono("bimonoid.nabla_counit", s, "!A is a bimonoid", seq({nabla(A), counit(A)}),
                       seq({ten(counit(A), counit(A)), rewire(oten(k, k), k)})));
    out.push_back(mono("bimonoid.unit_counit", s, "!A is a bimonoid", seq({unit(A), counit(A)}), id(k)));
    out.push_back(mono("natural.nabla", s, "!f is a monoid morphism", seq({ten(bang(f), bang(f)), nabla(B)}),
                       seq({nabla(A), bang(f)}), {fv}));
    out.push_back(mono("natural.unit", s, "!f is a monoid morphism", seq({unit(A), bang(f)}), unit(B), {fv}));
    out.push_back(mono("additive.bang_zero", s, "additive bialgebra modality", bang(zero(A, B)), seq({counit(A), unit(B)})));
    out.push_back(mono("additive.bang_sum", s, "additive bialgebra modality", bang(add(f, g)),
                       seq({comult(A), ten(bang(f), bang(g)), nabla(B)}), {fv, gv}));
}

inline void differential_laws(std::vector<LawSpec>& out)
{
    using namespace t;
    O A = ovar("A"), B = ovar("B"), bA = obang(A), bbA = obang(bA), k = ounit();
    T f = var("f");
    MVar fv{"f", A, B};
    const std::string s = "differential";
    O bba = oten(oten(bA, bA), A);
    out.push_back(mono("d.1", s, "[d.1] Constant Rule", seq({d(A), counit(A)}), zero(oten(bA, A), k)));
    out.push_back(mono("d.2", s, "[d.2] Leibniz Rule", seq({d(A), comult(A)}),
                       add(seq({ten(comult(A), id(A)), rewire(bba, oten(bA, oten(bA, A))), ten(id(bA), d(A))}),
                           seq({ten(comult(A), id(A)), rewire(bba, oten(oten(bA, A), bA), {0, 2, 1}), ten(d(A), id(bA))}))));
    out.push_back(mono("d.3", s, "[d.3] Linear Rule", seq({d(A), eps(A)}), seq({ten(counit(A), id(A)), rewire(oten(k, A), A)})));
    out.push_back(mono("d.4", s, "[d.4] Chain Rule", seq({d(A), delta(A)}),
                       seq({ten(comult(A), id(A)), rewire(bba, oten(bA, oten(bA, A))), ten(delta(A), d(A)), d(bA)})));
    O baa = oten(oten(bA, A), A);
    out.push_back(mono("d.5", s, "[d.5] Interchange Rule", seq({ten(d(A), id(A)), d(A)}),
                       seq({rewire(baa, baa, {0, 2, 1}), ten(d(A), id(A)), d(A)})));
    out.push_back(mono("d.natural", s, "d natural", seq({ten(bang(f), f), d(B)}), seq({d(A), bang(f)}), {fv}));
    out.push_back(mono("dcirc.natural", s, "coderiving transformation natural", seq({bang(f), dcirc(B)}),
                       seq({dcirc(A), ten(bang(f), f)}), {fv}));
    out.push_back(mono("dcirc.def", s, "coderiving transformation", dcirc(A), dcirc_from_comult(A)));
    out.push_back(mono("eta.from_d", s, "codereliction from d", eta(A), eta_from_d(d(A), A)));
    out.push_back(mono("eta.d_from_eta", s, "d from codereliction", d(A), d_from_eta(eta(A), A)));
    out.push_back(mono("eta.linear", s, "codereliction", seq({eta(A), eps(A)}), id(A)));
    out.push_back(mono("eta.natural", s, "codereliction natural", seq({f, eta(B)}), seq({eta(A), bang(f)}), {fv}));
    (void)bbA;
}

inline void reverse_laws(std::vector<LawSpec>& out)
{
    using namespace t;
    O A = ovar("A"), B = ovar("B"), bA = obang(A), bB = obang(B), bbA = obang(bA), k = ounit();
    T f = var("f");
    MVar fv{"f", A, B};
    const std::string s = "reverse";
    out.push_back(mono("r.N", s, "[r.N] Reverse Naturality Rule", seq({ten(bang(f), id(bB)), r(B), star(f)}),
                       seq({ten(id(bA), star(bang(f))), r(A)}), {fv}));
    out.push_back(mono("r.1", s, "[r.1] Reverse Constant Rule", seq({rewire(bA, oten(bA, k)), ten(id(bA), star(counit(A))), r(A)}),
                       zero(bA, A)));
    O bb = oten(bA, bA), quad = oten(bb, bb);
    T split = ten(comult(A), id(bb));
    T cupped = seq({ten(ten(id(bA), cup(bA)), id(bA)), rewire(oten(oten(bA, k), bA), bb), r(A)});
    out.push_back(mono("r.2", s, "[r.2] Reverse Leibniz Rule", seq({ten(id(bA), star(comult(A))), r(A)}),
                       add(seq({split, rewire(quad, oten(oten(bA, bb), bA), {0, 1, 2, 3}), cupped}),
                           seq({split, rewire(quad, oten(oten(bA, bb), bA), {0, 1, 3, 2}), cupped}))));
    out.push_back(mono("r.3", s, "[r.3] Reverse Linear Rule", seq({ten(id(bA), star(eps(A))), r(A)}),
                       seq({ten(counit(A), id(A)), rewire(oten(k, A), A)})));
    out.push_back(mono("r.4", s, "[r.4] Reverse Chain Rule", seq({ten(id(bA), star(delta(A))), r(A)}),
                       seq({ten(comult(A), id(bbA)), rewire(oten(bb, bbA), oten(bA, oten(bA, bbA))),
                            ten(id(bA), ten(delta(A), id(bbA))), ten(id(bA), r(bA)), r(A)})));
    T rr = seq({rewire(bb, oten(oten(bA, k), bA)), ten(ten(id(bA), cap(bA)), id(bA)), rewire(oten(oten(bA, bb), bA), quad),
                ten(r(A), r(A))});
    out.push_back(mono("r.5", s, "[r.5] Reverse Interchange Rule", seq({rr, sym(A, A)}), rr));
    out.push_back(mono("dr_roundtrip.r_from_d", s, "d and r determine each other", r_from_d(d(A), A), r(A)));
    out.push_back(mono("dr_roundtrip.d_from_r", s, "d and r determine each other", d_from_r(r(A), A), d(A)));
    out.push_back(mono("dr_roundtrip.d", s, "d and r constructions are inverse", d_from_r(r_from_d(d(A), A), A), d(A)));
    out.push_back(mono("dr_roundtrip.r", s, "d and r constructions are inverse", r_from_d(d_from_r(r(A), A), A), r(A)));
    out.push_back(mono("dstar_eq_dcirc", s, "d* = dcirc", star(d(A)), dcirc(A)));
    out.push_back(mono("r_from_dcirc", s, "r = (1 (x) dcirc);(cup (x) 1)", r_from_dcirc(dcirc(A), A), r(A)));
}

inline void compact_laws(std::vector<LawSpec>& out)
{
    using namespace t;
    O A = ovar("A"), B = ovar("B"), k = ounit();
    T f = var("f"), g = var("g");
    MVar fv{"f", A, B}, gv{"g", B, A};
    const std::string s = "compact";
    O aa = oten(A, A);
    out.push_back(mono("snake.left", s, "snake equations",
                       seq({rewire(A, oten(A, k)), ten(id(A), cap(A)), rewire(oten(A, aa), oten(aa, A)), ten(cup(A), id(A)),
                            rewire(oten(k, A), A)}),
                       id(A)));
    out.push_back(mono("snake.right", s, "snake equations",
                       seq({rewire(A, oten(k, A)), ten(cap(A), id(A)), rewire(oten(aa, A), oten(A, aa)), ten(id(A), cup(A)),
                            rewire(oten(A, k), A)}),
                       id(A)));
    out.push_back(mono("twist.cap", s, "twist equations", seq({cap(A), sym(A, A)}), cap(A)));
    out.push_back(mono("twist.cup", s, "twist equations", seq({sym(A, A), cup(A)}), cup(A)));
    out.push_back(mono("slide.cup", s, "sliding equations", seq({ten(f, id(B)), cup(B)}), seq({ten(id(A), star(f)), cup(A)}), {fv}));
    out.push_back(mono("slide.cap", s, "sliding equations", seq({cap(A), ten(f, id(A))}), seq({cap(B), ten(id(B), star(f))}), {fv}));
    out.push_back(mono("star.cupcap", s, "dagger from cups and caps", star_cc(f), star(f), {fv}));
    out.push_back(mono("star.involution", s, "dagger", star(star(f)), f, {fv}));
    out.push_back(mono("star.contravariant", s, "dagger", star(seq({f, g})), seq({star(g), star(f)}), {fv, gv}));
    out.push_back(mono("dagger_biproduct.pi0", s, "the dual of the projections are the injections", star(proj(0, A, B)), inj(0, A, B)));
    out.push_back(mono("dagger_biproduct.pi1", s, "the dual of the projections are the injections", star(proj(1, A, B)), inj(1, A, B)));
    out.push_back(mono("unit.cup", s, "cup on the unit", cup(k), rewire(oten(k, k), k)));
    out.push_back(mono("unit.cap", s, "cap on the unit", cap(k), rewire(k, oten(k, k))));
}

inline void seely_laws(std::vector<LawSpec>& out)
{
    using namespace t;
    O A = ovar("A"), B = ovar("B"), bA = obang(A), bB = obang(B), k = ounit();
    O ab = oprod(A, B), bab = obang(ab);
    const std::string s = "seely";
    out.push_back(mono("seely_iso.left", s, "the Seely maps are isomorphisms", seq({chi(A, B), chi_inv(A, B)}), id(bab)));
    out.push_back(mono("seely_iso.right", s, "the Seely maps are isomorphisms", seq({chi_inv(A, B), chi(A, B)}), id(oten(bA, bB))));
    out.push_back(mono("seely.counit", s, "Seely maps and the comonoid", seq({chi(A, B), ten(counit(A), counit(B)), rewire(oten(k, k), k)}),
                       counit(ab)));
    O q = oten(bA, bB);
    out.push_back(mono("seely.comonoid", s, "Seely maps and the comonoid",
                       seq({chi(A, B), ten(comult(A), comult(B)), rewire(oten(oten(bA, bA), oten(bB, bB)), oten(q, q), {0, 2, 1, 3})}),
                       seq({comult(ab), ten(chi(A, B), chi(A, B))})));
}

inline void cokleisli_cd_laws(std::vector<LawSpec>& out)
{
    using namespace c;
    CO A = cvar("A"), B = cvar("B"), C = cvar("C"), AA = cprod(A, A), AB = cprod(A, B);
    CT f = var("f"), g = var("g"), h = var("h");
    CVar fv{"f", A, B}, f2{"g", A, B}, gAC{"g", A, C}, gBC{"g", B, C}, hCA{"h", C, A};
    const std::string s = "cokleisli_cd";
    out.push_back(cart("kl.assoc", s, "coKleisli composition", seq({seq({f, g}), h}), seq({f, seq({g, h})}), {fv, gBC, hCA}));
    out.push_back(cart("kl.id_left", s, "coKleisli identity", seq({id(A), f}), f, {fv}));
    out.push_back(cart("kl.id_right", s, "coKleisli identity", seq({f, id(B)}), f, {fv}));
    out.push_back(cart("cla.inj_proj", s, "injection maps", seq({inj(0, A, B), proj(0, A, B)}), id(A), {}));
    out.push_back(cart("cla.inj_proj_zero", s, "injection maps", seq({inj(0, A, B), proj(1, A, B)}), zero(A, B), {}));
    out.push_back(cart("cla.interchange_involution", s, "interchange map", seq({interchange(A), interchange(A)}), id(cprod(AA, AA)), {}));
    out.push_back(cart("cla.left_additive", s, "left additive structure", seq({f, add(g, h)}), add(seq({f, g}), seq({f, h})),
                       {fv, gBC, {"h", B, C}}));
    out.push_back(cart("CD.1a", s, "[CD.1] additivity", D(add(f, g)), add(D(f), D(g)), {fv, f2}));
    out.push_back(cart("CD.1b", s, "[CD.1] additivity", D(zero(A, B)), zero(AA, B), {}));
    out.push_back(cart("CD.2a", s, "[CD.2] additivity in the second argument", seq({times(id(A), plus(A)), D(f)}),
                       add(seq({times(id(A), proj(0, A, A)), D(f)}), seq({times(id(A), proj(1, A, A)), D(f)})), {fv}));
    out.push_back(cart("CD.2b", s, "[CD.2] additivity in the second argument", seq({inj(0, A, A), D(f)}), zero(A, B), {fv}));
    out.push_back(cart("CD.3a", s, "[CD.3] identity and projections", D(id(A)), proj(1, A, A), {}));
    out.push_back(cart("CD.3b", s, "[CD.3] identity and projections", D(proj(0, A, B)), seq({proj(1, AB, AB), proj(0, A, B)}), {}));
    out.push_back(cart("CD.3c", s, "[CD.3] identity and projections", D(proj(1, A, B)), seq({proj(1, AB, AB), proj(1, A, B)}), {}));
    out.push_back(cart("CD.4", s, "[CD.4] pairing", D(pair(f, g)), pair(D(f), D(g)), {fv, gAC}));
    out.push_back(cart("CD.5", s, "[CD.5] chain rule", D(seq({f, g})), seq({pair(seq({proj(0, A, A), f}), D(f)), D(g)}), {fv, gBC}));
    out.push_back(cart("CD.6", s, "[CD.6] linearity of the derivative", seq({ell(A), D(D(f))}), D(f), {fv}, true));
    out.push_back(cart("CD.7", s, "[CD.7] symmetry of mixed partial derivatives", seq({interchange(A), D(D(f))}), D(D(f)), {fv}, true));
    out.push_back(cart("D_dcirc", s, "D via the coderiving transformation", D(f), D_dcirc(f), {fv}));

    using namespace t;
    O Am = ovar("A"), Bm = ovar("B");
    T gm = t::var("g"), hm = t::var("h");
    out.push_back(mono("kl.lift_functor", s, "F_!(f) = eps ; f", kl_compose(kl_lift(gm), kl_lift(hm)), kl_lift(t::seq({gm, hm})),
                       {{"g", Am, Bm}, {"h", Bm, Am}}));
    out.push_back(mono("linear.lift", s, "eps ; g is linear",
                       t::seq({dcirc(Am), ten(bang(t::zero(Am, Am)), t::id(Am)), d(Am), kl_lift(gm)}), kl_lift(gm), {{"g", Am, Bm}}));
    out.push_back(mono("linear.lift_eta", s, "eps ; g is linear", t::seq({eps(Am), eta(Am), kl_lift(gm)}), kl_lift(gm),
                       {{"g", Am, Bm}}));
}

inline void cokleisli_rd_laws(std::vector<LawSpec>& out)
{
    using namespace c;
    CO A = cvar("A"), B = cvar("B"), C = cvar("C"), AA = cprod(A, A), AB = cprod(A, B), BB = cprod(B, B);
    CT f = var("f"), g = var("g");
    CVar fv{"f", A, B}, f2{"g", A, B}, gAC{"g", A, C}, gBC{"g", B, C};
    const std::string s = "cokleisli_rd";
    out.push_back(cart("RD.1a", s, "[RD.1] additivity", R(add(f, g)), add(R(f), R(g)), {fv, f2}));
    out.push_back(cart("RD.1b", s, "[RD.1] additivity", R(zero(A, B)), zero(AB, A), {}));
    out.push_back(cart("RD.2a", s, "[RD.2] additivity in the second argument", seq({times(id(A), plus(B)), R(f)}),
                       add(seq({times(id(A), proj(0, B, B)), R(f)}), seq({times(id(A), proj(1, B, B)), R(f)})), {fv}));
    out.push_back(cart("RD.2b", s, "[RD.2] additivity in the second argument", seq({inj(0, A, B), R(f)}), zero(A, A), {fv}));
    out.push_back(cart("RD.3a", s, "[RD.3] identity and projections", R(id(A)), proj(1, A, A), {}));
    out.push_back(cart("RD.3b", s, "[RD.3] identity and projections", R(proj(0, A, B)), seq({proj(1, AB, A), inj(0, A, B)}), {}));
    out.push_back(cart("RD.3c", s, "[RD.3] identity and projections", R(proj(1, A, B)), seq({proj(1, AB, B), inj(1, A, B)}), {}));
    out.push_back(cart("RD.4", s, "[RD.4] pairing", R(pair(f, g)),
                       add(seq({times(id(A), proj(0, B, C)), R(f)}), seq({times(id(A), proj(1, B, C)), R(g)})), {fv, gAC}));
    out.push_back(cart("RD.5", s, "[RD.5] reverse chain rule", R(seq({f, g})),
                       seq({pair(proj(0, A, C), seq({pair(seq({proj(0, A, C), f}), proj(1, A, C)), R(g)})), R(f)}), {fv, gBC}));
    out.push_back(cart("RD.6", s, "[RD.6] linearity of the reverse derivative",
                       seq({times(inj(0, A, B), inj(1, A, B)), times(inj(0, AB, A), id(AB)), R(R(R(f))), proj(1, AB, A)}), R(f),
                       {fv}, true));
    CT inner = seq({times(inj(0, A, B), id(A)), R(R(f)), proj(1, A, B)});
    CT outer = seq({times(inj(0, AA, B), id(AA)), R(R(inner)), proj(1, AA, B)});
    out.push_back(cart("RD.7", s, "[RD.7] symmetry of mixed partial derivatives", seq({interchange(A), outer}), outer, {fv}, true));
    out.push_back(cart("crdc_to_cdc", s, "D[f] := (iota0 x 1);R[R[f]];pi1", inner, D(f), {fv}));
    out.push_back(cart("R_three_way.dagger", s, "R[f] = D[f] dagger in context", R(f), R_dagger(f), {fv}));
    out.push_back(cart("R_three_way.cupcap", s, "R via the self-dual subcategory", R(f), R_cupcap(f), {fv}));
    (void)BB;
}

inline void fibration_laws(std::vector<LawSpec>& out)
{
    using namespace t;
    O X = ovar("X"), Y = ovar("Y"), A = ovar("A"), B = ovar("B"), bX = obang(X), bY = obang(Y);
    T f = var("f"), g = var("g"), h = var("h"), k2 = var("k");
    MVar fv{"f", oten(bX, A), B}, gv{"g", oten(bX, B), A}, hv{"h", oten(bX, A), A};
    MVar sub{"h", bY, X};
    const std::string s = "fibration";
    out.push_back(mono("ctx.id_left", s, "fibre category", ctx_compose(ctx_id(X, A), f, X), f, {fv}));
    out.push_back(mono("ctx.id_right", s, "fibre category", ctx_compose(f, ctx_id(X, B), X), f, {fv}));
    out.push_back(mono("ctx.assoc", s, "fibre category", ctx_compose(ctx_compose(h, h, X), f, X), ctx_compose(h, ctx_compose(h, f, X), X),
                       {hv, fv}));
    out.push_back(mono("ctx.tensor_id", s, "fibrewise tensor", ctx_tensor(ctx_id(X, A), ctx_id(X, B), X), ctx_id(X, oten(A, B))));
    out.push_back(mono("subst.id", s, "substitution functor", ctx_subst(eps(X), f), f, {fv}));
    out.push_back(mono("subst.compose", s, "substitution functor", ctx_subst(kl_compose(h, k2), f), ctx_subst(h, ctx_subst(k2, f)),
                       {{"h", bX, Y}, {"k", bY, X}, fv}));
    out.push_back(mono("subst.functor", s, "substitution functor", ctx_subst(h, ctx_compose(f, g, X)),
                       ctx_compose(ctx_subst(h, f), ctx_subst(h, g), Y), {sub, fv, gv}));
    out.push_back(mono("subst.tensor", s, "substitution is strict monoidal", ctx_subst(h, ctx_tensor(f, f, X)),
                       ctx_tensor(ctx_subst(h, f), ctx_subst(h, f), Y), {sub, fv}));
    out.push_back(mono("E_roundtrip.ctx", s, "E and E^-1 are inverse", to_ctx(to_kl(f, X), X, A), f, {fv}));
    out.push_back(mono("E_roundtrip.kl", s, "E and E^-1 are inverse", to_kl(to_ctx(to_kl(f, X), X, A), X), to_kl(f, X), {fv}));
    out.push_back(mono("E.identity", s, "E(e (x) 1) = eps ; pi1", to_kl(ctx_id(X, A), X), kl_lift(proj(1, X, A))));
    out.push_back(mono("dagger_involution", s, "dagger is its own inverse", ctx_dagger(ctx_dagger(f, X), X), f, {fv}));
    out.push_back(mono("dagger_contravariant", s, "contravariant functoriality", ctx_dagger(ctx_compose(f, g, X), X),
                       ctx_compose(ctx_dagger(g, X), ctx_dagger(f, X), X), {fv, gv}));
    out.push_back(mono("dagger_change_of_base", s, "change of base", ctx_dagger(ctx_subst(h, f), Y), ctx_subst(h, ctx_dagger(f, X)),
                       {sub, fv}));
    out.push_back(mono("dagger_identity", s, "dagger of the identity", ctx_dagger(ctx_id(X, A), X), ctx_id(X, A)));
    out.push_back(mono("dagger_lift", s, "the dagger of e_X (x) f", ctx_dagger(ctx_lift(X, var("p")), X), ctx_lift(X, star(var("p"))),
                       {{"p", A, B}}));
    out.push_back(mono("dagger_biproduct", s, "the dual of the projections are the injections", ctx_dagger(ctx_lift(X, proj(0, A, B)), X),
                       ctx_lift(X, inj(0, A, B))));
}

}  // namespace detail

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> n{"modality", "bialgebra", "differential", "reverse", "compact",
                                            "seely", "cokleisli_cd", "cokleisli_rd", "fibration"};
    return n;
}

inline const std::vector<LawSpec>& catalog()
{
    static const std::vector<LawSpec> all = [] {
        std::vector<LawSpec> v;
        detail::modality_laws(v);
        detail::bialgebra_laws(v);
        detail::differential_laws(v);
        detail::reverse_laws(v);
        detail::compact_laws(v);
        detail::seely_laws(v);
        detail::cokleisli_cd_laws(v);
        detail::cokleisli_rd_laws(v);
        detail::fibration_laws(v);
        return v;
    }();
    return all;
}

inline const LawSpec* find_law(const std::string& id)
{
    for (const auto& l : catalog())
        if (l.id == id) return &l;
    return nullptr;
}

// ---------------------------------------------------------------- comparison with the stability check

template <Semiring S>
struct Snapshot {
    // per domain label: codomain label -> (lhs, rhs)
    std::vector<std::pair<Label, std::map<Label, std::pair<Value<S>, Value<S>>, LabelLess>>> rows;
    std::set<std::string> sites;
};

template <Semiring S>
Snapshot<S> snapshot(const std::function<std::pair<Mor<S>, Mor<S>>()>& build, std::size_t slack, std::size_t parts)
{
    Truncation t;
    t.slack = slack;
    t.delta_parts = parts;
    TruncationScope scope(t);
    auto [l, r] = build();
    if (!(l.dom() == r.dom()) || !(l.cod() == r.cod()))
        throw EvalError("$", "sides differ in type: " + l.dom().name() + " -> " + l.cod().name() + " vs " + r.dom().name() + " -> " +
                                 r.cod().name());
    Snapshot<S> s;
    Obj cod = l.cod();
    for (auto a : l.dom().basis()) {
        std::map<Label, std::pair<Value<S>, Value<S>>, LabelLess> m;
        for (const auto& [b, v] : l.row(a))
            if (cod.contains(b)) m.try_emplace(b, v, S::zero());
        for (const auto& [b, v] : r.row(a))
            if (cod.contains(b)) {
                auto [it, fresh] = m.try_emplace(b, S::zero(), v);
                if (!fresh) it->second.second = v;
            }
        s.rows.emplace_back(a, std::move(m));
    }
    s.sites = Truncation::current().log->snapshot();
    return s;
}

// Evaluates at the base level and, when any infinite sum was cut, once more one level up;
// entries that move between the levels are skipped rather than compared.
template <Semiring S>
Outcome leveled_compare(const std::function<std::pair<Mor<S>, Mor<S>>()>& build, std::size_t slack = 2, std::size_t parts = 6)
{
    Outcome o;
    Snapshot<S> s0 = snapshot<S>(build, slack, parts);
    o.sites = s0.sites;
    std::optional<Snapshot<S>> s1;
    if (!s0.sites.empty()) s1 = snapshot<S>(build, slack + 1, parts + 1);
    auto get = [](const std::map<Label, std::pair<Value<S>, Value<S>>, LabelLess>& m, Label b) {
        auto it = m.find(b);
        return it == m.end() ? std::pair<Value<S>, Value<S>>{S::zero(), S::zero()} : it->second;
    };
    for (std::size_t i = 0; i < s0.rows.size(); ++i) {
        const auto& [a, m0] = s0.rows[i];
        std::set<Label, LabelLess> cols;
        for (const auto& [b, v] : m0) cols.insert(b);
        if (s1)
            for (const auto& [b, v] : s1->rows[i].second) cols.insert(b);
        for (auto b : cols) {
            auto v0 = get(m0, b);
            if (s1) {
                auto v1 = get(s1->rows[i].second, b);
                if (!(v0.first == v1.first) || !(v0.second == v1.second)) {
                    ++o.skipped;
                    continue;
                }
            }
            ++o.compared;
            if (!(v0.first == v0.second) && o.equal) {
                o.equal = false;
                o.cex = Counterexample{{}, render(a), render(b), S::to_string(v0.first), S::to_string(v0.second)};
            }
        }
    }
    return o;
}

// ---------------------------------------------------------------- instances

// Object assignment and sampling policy for a monoidal model.
template <Semiring S>
struct MonoidalSetup {
    const Modality<S>* model = nullptr;
    std::map<std::string, Obj> objs;
    std::size_t samples = 8;
    double density = 0.35;
    std::size_t max_basis = 16;  // rank-one sweep when a single variable has at most this many entries
};

inline std::string describe_sample(const std::vector<std::pair<std::string, std::string>>& parts)
{
    std::string s;
    for (const auto& [n, d] : parts) s += (s.empty() ? "" : "; ") + n + " = " + d;
    return s;
}

template <Semiring S>
std::string describe_mor(const Mor<S>& f)
{
    std::string s = "{";
    bool first = true;
    for (auto a : f.dom().basis())
        for (const auto& [b, v] : f.row(a)) {
            s += (first ? "" : ", ") + render(a) + "->" + render(b) + ":" + S::to_string(v);
            first = false;
        }
    return s + "}";
}

inline void merge(LawReport& rep, const Outcome& o, const std::string& sample)
{
    rep.compared += o.compared;
    rep.skipped += o.skipped;
    rep.sites.insert(o.sites.begin(), o.sites.end());
    ++rep.samples;
    if (!o.equal && !rep.cex) {
        rep.cex = o.cex;
        if (rep.cex) rep.cex->sample = sample;
    }
}

inline void finish(LawReport& rep)
{
    if (rep.verdict == Verdict::NotApplicable) return;
    if (rep.cex)
        rep.verdict = Verdict::Fail;
    else if (rep.skipped > 0)
        rep.verdict = Verdict::WindowSkippedPartial;
    else
        rep.verdict = Verdict::Pass;
}

template <Semiring S>
void check_monoidal(const LawSpec& law, const MonoidalSetup<S>& setup, Rng& rng, LawReport& rep)
{
    Env<S> env;
    env.model = setup.model;
    env.objs = setup.objs;
    struct Shape {
        Obj dom, cod;
        std::vector<Label> rows, cols;
    };
    std::vector<Shape> shapes;
    for (const auto& v : law.vars) {
        Obj d = resolve(v.dom, env), c = resolve(v.cod, env);
        shapes.push_back({d, c, d.basis(), c.basis()});
    }
    std::vector<std::map<std::string, Mor<S>>> assignments;
    if (law.vars.empty()) {
        assignments.emplace_back();
    } else {
        for (std::size_t i = 0; i < setup.samples; ++i) {
            std::map<std::string, Mor<S>> a;
            for (std::size_t j = 0; j < law.vars.size(); ++j)
                a.emplace(law.vars[j].name, random_mor<S>(shapes[j].dom, shapes[j].cod, shapes[j].rows, shapes[j].cols, rng, setup.density));
            assignments.push_back(std::move(a));
        }
        if (law.vars.size() == 1 && shapes[0].rows.size() * shapes[0].cols.size() <= setup.max_basis)
            for (auto& m : basis_mors<S>(shapes[0].dom, shapes[0].cod, shapes[0].rows, shapes[0].cols))
                assignments.push_back({{law.vars[0].name, m}});
    }
    for (const auto& a : assignments) {
        env.vars = a;
        auto build = [&] { return std::pair{eval(law.lhs, env, "lhs"), eval(law.rhs, env, "rhs")}; };
        Outcome o = leveled_compare<S>(build);
        std::vector<std::pair<std::string, std::string>> desc;
        if (!o.equal)
            for (const auto& [n, m] : a) desc.emplace_back(n, describe_mor(m));
        merge(rep, o, describe_sample(desc));
    }
}

// Runs a Cartesian law. `outcome(lhs_term, rhs_term, env)` compares one instance; `sample(var, rng)` draws a map.
template <class Cat, class Sampler, class Compare, class Describe>
void check_cartesian(const LawSpec& law, const Cat& cat, const std::map<std::string, typename Cat::Object>& objs, std::size_t samples,
                     std::size_t extra, Rng& rng, Sampler&& sample, Compare&& outcome, Describe&& describe, LawReport& rep)
{
    CEnv<Cat> env;
    env.cat = &cat;
    env.objs = objs;
    std::size_t n = law.cvars.empty() ? 1 : samples + extra;
    for (std::size_t i = 0; i < n; ++i) {
        env.vars.clear();
        for (const auto& v : law.cvars)
            env.vars.insert_or_assign(v.name, sample(cresolve(v.dom, env), cresolve(v.cod, env), rng, i));
        Outcome o;
        try {
            o = outcome(law.clhs, law.crhs, env);
        } catch (const NotApplicable& e) {
            rep.verdict = Verdict::NotApplicable;
            rep.note = std::string("model lacks ") + e.what();
            return;
        }
        std::vector<std::pair<std::string, std::string>> desc;
        if (!o.equal)
            for (const auto& [nm, m] : env.vars) desc.emplace_back(nm, describe(m));
        merge(rep, o, describe_sample(desc));
    }
}

}  // namespace rdc::laws
