#pragma once

#include "modality.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace rdc {

// Body-level constructions. Every function takes and returns plain Mor values;
// the objects name the spaces the bodies live over.

// [[f;g]] = delta ; !f ; g
template <Semiring S>
Mor<S> kl_compose(const Modality<S>& m, const Mor<S>& f, const Mor<S>& g, std::optional<std::size_t> parts = {})
{
    Obj a = f.dom().inner();
    Mor<S> dl = parts ? m.delta_parts(a, *parts) : m.delta(a);
    return seq<S>({dl, m.bang_map(f), g});
}

template <Semiring S>
Mor<S> kl_id(const Modality<S>& m, const Obj& a)
{
    return m.eps(a);
}

// F_!(g) = eps ; g
template <Semiring S>
Mor<S> kl_lift(const Modality<S>& m, const Mor<S>& g)
{
    return compose(m.eps(g.dom()), g);
}

// [[D f]] = chi ; (1 (x) eps) ; d ; [[f]]
template <Semiring S>
Mor<S> kl_D(const Modality<S>& m, const Mor<S>& f, const Obj& a)
{
    return seq<S>({chi(m, a, a), tensor(identity<S>(m.bang(a)), m.eps(a)), m.d(a), f});
}

// [[D f]] = dcirc ; (!pi0 (x) pi1) ; d ; [[f]]
template <Semiring S>
Mor<S> kl_D_dcirc(const Modality<S>& m, const Mor<S>& f, const Obj& a)
{
    return seq<S>({m.dcirc(Obj::biproduct(a, a)), tensor(m.bang_map(proj<S>(0, a, a)), proj<S>(1, a, a)), m.d(a), f});
}

// [[R f]] = chi ; (1 (x) eps) ; (1 (x) [[f]]*) ; r
template <Semiring S>
Mor<S> kl_R(const Modality<S>& m, const Mor<S>&, const Mor<S>& fstar, const Obj& a, const Obj& b)
{
    return seq<S>({chi(m, a, b), tensor(identity<S>(m.bang(a)), m.eps(b)), tensor(identity<S>(m.bang(a)), fstar), m.r(a)});
}

template <Semiring S>
Mor<S> kl_R(const Modality<S>& m, const Mor<S>& f, const Obj& a, const Obj& b)
{
    return kl_R(m, f, star(f), a, b);
}

// [[R f]] = chi ; (1 (x) eps) ; (1 (x) cap_A (x) 1_B) ; (d (x) sigma) ; ([[f]] (x) 1 (x) 1) ; (cup_B (x) 1)
template <Semiring S>
Mor<S> kl_R_cupcap(const Modality<S>& m, const Mor<S>& f, const Obj& a, const Obj& b)
{
    Obj ba = m.bang(a), k = Obj::unit();
    return seq<S>({chi(m, a, b), tensor(identity<S>(ba), m.eps(b)),
                   rewire<S>(Obj::tensor(ba, b), Obj::tensor(Obj::tensor(ba, k), b)),
                   tensor(tensor(identity<S>(ba), cap<S>(a)), identity<S>(b)),
                   rewire<S>(Obj::tensor(Obj::tensor(ba, Obj::tensor(a, a)), b), Obj::tensor(Obj::tensor(ba, a), Obj::tensor(a, b))),
                   tensor(m.d(a), symmetry<S>(a, b)), tensor(f, identity<S>(Obj::tensor(b, a))),
                   rewire<S>(Obj::tensor(b, Obj::tensor(b, a)), Obj::tensor(Obj::tensor(b, b), a)),
                   tensor(cup<S>(b), identity<S>(a)), rewire<S>(Obj::tensor(k, a), a)});
}

// Context fibre: maps !X (x) A -> B.

template <Semiring S>
Mor<S> ctx_id(const Modality<S>& m, const Obj& x, const Obj& a)
{
    return compose(tensor(m.counit(x), identity<S>(a)), unitor_left<S>(a));
}

// e_X (x) g
template <Semiring S>
Mor<S> ctx_lift(const Modality<S>& m, const Obj& x, const Mor<S>& g)
{
    return seq<S>({tensor(m.counit(x), identity<S>(g.dom())), unitor_left<S>(g.dom()), g});
}

// (Delta_X (x) 1) ; (1 (x) f) ; g
template <Semiring S>
Mor<S> ctx_compose(const Modality<S>& m, const Mor<S>& f, const Mor<S>& g, const Obj& x)
{
    Obj bx = m.bang(x), a = f.dom().right();
    return seq<S>({tensor(m.comult(x), identity<S>(a)), rewire<S>(Obj::tensor(Obj::tensor(bx, bx), a), Obj::tensor(bx, Obj::tensor(bx, a))),
                   tensor(identity<S>(bx), f), g});
}

// substitution along h: X -> Y in the coKleisli category: (delta ; !h (x) 1) ; f
template <Semiring S>
Mor<S> ctx_substitute(const Modality<S>& m, const Mor<S>& h, const Mor<S>& f, std::optional<std::size_t> parts = {})
{
    Obj x = h.dom().inner(), a = f.dom().right();
    Mor<S> dl = parts ? m.delta_parts(x, *parts) : m.delta(x);
    return compose(tensor(compose(dl, m.bang_map(h)), identity<S>(a)), f);
}

// fibrewise tensor: (Delta_X (x) 1 (x) 1) ; (1 (x) sigma (x) 1) ; (f (x) g)
template <Semiring S>
Mor<S> ctx_tensor(const Modality<S>& m, const Mor<S>& f, const Mor<S>& g, const Obj& x)
{
    Obj bx = m.bang(x), a = f.dom().right(), a2 = g.dom().right();
    return seq<S>({rewire<S>(Obj::tensor(bx, Obj::tensor(a, a2)), Obj::tensor(bx, Obj::tensor(a, a2))),
                   tensor(m.comult(x), identity<S>(Obj::tensor(a, a2))),
                   rewire<S>(Obj::tensor(Obj::tensor(bx, bx), Obj::tensor(a, a2)), Obj::tensor(Obj::tensor(bx, a), Obj::tensor(bx, a2)),
                             {0, 2, 1, 3}),
                   tensor(f, g)});
}

// (1 (x) cap_A (x) 1) ; (f (x) sigma) ; (cup_B (x) 1)
template <Semiring S>
Mor<S> ctx_dagger(const Modality<S>& m, const Mor<S>& f, const Obj& x)
{
    Obj bx = m.bang(x), a = f.dom().right(), b = f.cod(), k = Obj::unit();
    return seq<S>({rewire<S>(Obj::tensor(bx, b), Obj::tensor(Obj::tensor(bx, k), b)),
                   tensor(tensor(identity<S>(bx), cap<S>(a)), identity<S>(b)),
                   rewire<S>(Obj::tensor(Obj::tensor(bx, Obj::tensor(a, a)), b), Obj::tensor(Obj::tensor(bx, a), Obj::tensor(a, b))),
                   tensor(f, symmetry<S>(a, b)), rewire<S>(Obj::tensor(b, Obj::tensor(b, a)), Obj::tensor(Obj::tensor(b, b), a)),
                   tensor(cup<S>(b), identity<S>(a)), rewire<S>(Obj::tensor(k, a), a)});
}

// E(g) = dcirc ; (!pi0 (x) pi1) ; g, a map X x A -> B
template <Semiring S>
Mor<S> ctx_to_kl(const Modality<S>& m, const Mor<S>& g, const Obj& x)
{
    Obj a = g.dom().right();
    return seq<S>({m.dcirc(Obj::biproduct(x, a)), tensor(m.bang_map(proj<S>(0, x, a)), proj<S>(1, x, a)), g});
}

// E^-1(f) = (!iota0 (x) iota1) ; d ; [[f]]
template <Semiring S>
Mor<S> kl_to_ctx(const Modality<S>& m, const Mor<S>& f, const Obj& x, const Obj& a)
{
    return seq<S>({tensor(m.bang_map(inj<S>(0, x, a)), inj<S>(1, x, a)), m.d(Obj::biproduct(x, a)), f});
}

// d° ; (!0 (x) 1) ; d ; [[f]] = [[f]]
template <Semiring S>
Comparison<S> is_linear(const Modality<S>& m, const Mor<S>& f)
{
    Obj a = f.dom().inner();
    Mor<S> lhs = seq<S>({m.dcirc(a), tensor(m.bang_map(zero<S>(a, a)), identity<S>(a)), m.d(a), f});
    return mor_equal(lhs, f);
}

// eps ; eta ; [[f]] = [[f]]
template <Semiring S>
Comparison<S> is_linear_eta(const Modality<S>& m, const Mor<S>& f)
{
    Obj a = f.dom().inner();
    return mor_equal(seq<S>({m.eps(a), m.eta(a), f}), f);
}

// d° ; (!pi0 (x) pi1) ; (!iota0 (x) iota1) ; d ; [[f]] = [[f]]
template <Semiring S>
Comparison<S> is_linear_in_context(const Modality<S>& m, const Mor<S>& f, const Obj& x, const Obj& a)
{
    return mor_equal(ctx_to_kl(m, kl_to_ctx(m, f, x, a), x), f);
}

// A coKleisli map A -> B, with a bound W such that the body vanishes on bags of more than W elements.
template <Semiring S>
struct KlMor {
    Obj dom, cod;
    Mor<S> body;
    std::size_t bound = 0;
};

// The coKleisli category of a modality as a Cartesian left additive category with D and R.
// Support bounds keep delta and transposes exact.
template <Semiring S>
class KlCat {
public:
    using Map = KlMor<S>;
    using Object = Obj;

    explicit KlCat(const Modality<S>& m) : m_(m) {}
    const Modality<S>& model() const { return m_; }

    Obj product(const Obj& a, const Obj& b) const { return Obj::biproduct(a, b); }
    Obj first(const Obj& p) const { return p.left(); }
    Obj second(const Obj& p) const { return p.right(); }
    Obj dom(const Map& f) const { return f.dom; }
    Obj cod(const Map& f) const { return f.cod; }

    Map lift(const Mor<S>& g) const { return {g.dom(), g.cod(), kl_lift(m_, g), 1}; }
    Map id(const Obj& a) const { return {a, a, kl_id(m_, a), 1}; }
    Map zero(const Obj& a, const Obj& b) const { return {a, b, rdc::zero<S>(m_.bang(a), b), 0}; }
    Map proj(int i, const Obj& a, const Obj& b) const { return lift(rdc::proj<S>(i, a, b)); }
    Map inj(int i, const Obj& a, const Obj& b) const { return lift(rdc::inj<S>(i, a, b)); }

    Map compose(const Map& f, const Map& g) const
    {
        if (!(f.cod == g.dom)) throw std::invalid_argument(obj_mismatch("kl compose", f.cod, g.dom));
        return {f.dom, g.cod, kl_compose(m_, f.body, g.body, g.bound), f.bound * g.bound};
    }
    Map pair(const Map& f, const Map& g) const
    {
        if (!(f.dom == g.dom)) throw std::invalid_argument(obj_mismatch("kl pair", f.dom, g.dom));
        return {f.dom, product(f.cod, g.cod), rdc::pair(f.body, g.body), std::max(f.bound, g.bound)};
    }
    Map add(const Map& f, const Map& g) const
    {
        return {f.dom, f.cod, rdc::add(f.body, g.body), std::max(f.bound, g.bound)};
    }

    Map D(const Map& f) const { return {product(f.dom, f.dom), f.cod, kl_D(m_, f.body, f.dom), f.bound}; }
    Map D_dcirc(const Map& f) const { return {product(f.dom, f.dom), f.cod, kl_D_dcirc(m_, f.body, f.dom), f.bound}; }
    Map R(const Map& f) const
    {
        return {product(f.dom, f.cod), f.dom, kl_R(m_, f.body, transpose(f), f.dom, f.cod), f.bound};
    }
    // R[f] = E(D[f] dagger in context)
    Map R_dagger(const Map& f) const
    {
        Map df = D(f);
        Mor<S> ctx = kl_to_ctx(m_, df.body, f.dom, f.dom);
        Mor<S> dg = ctx_dagger(m_, ctx, f.dom);
        return {product(f.dom, f.cod), f.dom, ctx_to_kl(m_, dg, f.dom), f.bound};
    }
    Map R_cupcap(const Map& f) const { return {product(f.dom, f.cod), f.dom, kl_R_cupcap(m_, f.body, f.dom, f.cod), f.bound}; }

    Comparison<S> compare(const Map& f, const Map& g) const
    {
        Comparison<S> c;
        if (!(f.dom == g.dom) || !(f.cod == g.cod)) {
            c.equal = false;
            c.reason = "shape: " + f.dom.name() + " -> " + f.cod.name() + " vs " + g.dom.name() + " -> " + g.cod.name();
            return c;
        }
        return mor_equal(f.body, g.body);
    }

    // exact transpose of a bounded body
    Mor<S> transpose(const Map& f) const
    {
        std::unordered_map<Label, Accum<S>> acc;
        Obj window = m_.exact() ? m_.bang(f.dom) : Obj::bang(f.dom, f.bound);
        for (auto l : window.basis())
            for (const auto& [b, v] : f.body.row(l)) acc[b].add(l, v);
        std::unordered_map<Label, RowVec<S>> rows;
        for (auto& [b, a] : acc) rows.emplace(b, a.take());
        return Mor<S>(f.cod, f.body.dom(), std::make_shared<TableSource<S>>(std::move(rows)));
    }

private:
    const Modality<S>& m_;
};

// A map in the fibre over X: !X (x) A -> B, with the support bound on the !X factor.
template <Semiring S>
struct CtxMor {
    Obj ctx, dom, cod;
    Mor<S> body;
    std::size_t bound = 0;
};

template <Semiring S>
class Fibration {
public:
    explicit Fibration(const Modality<S>& m) : m_(m) {}

    CtxMor<S> id(const Obj& x, const Obj& a) const { return {x, a, a, ctx_id(m_, x, a), 0}; }
    CtxMor<S> lift(const Obj& x, const Mor<S>& g) const { return {x, g.dom(), g.cod(), ctx_lift(m_, x, g), 0}; }
    CtxMor<S> compose(const CtxMor<S>& f, const CtxMor<S>& g) const
    {
        if (!(f.ctx == g.ctx) || !(f.cod == g.dom)) throw std::invalid_argument(obj_mismatch("ctx compose", f.cod, g.dom));
        return {f.ctx, f.dom, g.cod, ctx_compose(m_, f.body, g.body, f.ctx), std::max(f.bound, g.bound)};
    }
    CtxMor<S> tensor(const CtxMor<S>& f, const CtxMor<S>& g) const
    {
        return {f.ctx, Obj::tensor(f.dom, g.dom), Obj::tensor(f.cod, g.cod), ctx_tensor(m_, f.body, g.body, f.ctx),
                f.bound + g.bound};
    }
    CtxMor<S> dagger(const CtxMor<S>& f) const { return {f.ctx, f.cod, f.dom, ctx_dagger(m_, f.body, f.ctx), f.bound}; }
    CtxMor<S> substitute(const KlMor<S>& h, const CtxMor<S>& f) const
    {
        if (!(h.cod == f.ctx)) throw std::invalid_argument(obj_mismatch("substitute", h.cod, f.ctx));
        return {h.dom, f.dom, f.cod, ctx_substitute(m_, h.body, f.body, f.bound), h.bound * f.bound};
    }
    KlMor<S> E(const CtxMor<S>& g) const
    {
        return {Obj::biproduct(g.ctx, g.dom), g.cod, ctx_to_kl(m_, g.body, g.ctx), g.bound + 1};
    }
    // rejects maps that are not linear in context
    CtxMor<S> E_inv(const KlMor<S>& f) const
    {
        if (f.dom.kind() != ObjKind::Biproduct) throw std::invalid_argument("E_inv: domain is not a product");
        Obj x = f.dom.left(), a = f.dom.right();
        auto c = is_linear_in_context(m_, f.body, x, a);
        if (!c.equal) throw std::invalid_argument("E_inv: map is not linear in context");
        return {x, a, f.cod, kl_to_ctx(m_, f.body, x, a), f.bound ? f.bound - 1 : 0};
    }
    Comparison<S> compare(const CtxMor<S>& f, const CtxMor<S>& g) const { return mor_equal(f.body, g.body); }

private:
    const Modality<S>& m_;
};

}  // namespace rdc
