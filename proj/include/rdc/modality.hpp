#pragma once

#include "mor.hpp"

#include <string>

namespace rdc {

// An additive bialgebra modality with a deriving and a reverse deriving transformation.
template <Semiring S>
class Modality {
public:
    virtual ~Modality() = default;

    virtual std::string id() const = 0;
    virtual Obj bang(const Obj& x) const = 0;
    // true when no structure map ever cuts an infinite sum
    virtual bool exact() const = 0;

    virtual Mor<S> delta(const Obj& x) const = 0;   // !X -> !!X
    // delta restricted to at most `parts` parts; exact whenever the next map ignores bags with more elements
    virtual Mor<S> delta_parts(const Obj& x, std::size_t) const { return delta(x); }
    virtual Mor<S> eps(const Obj& x) const = 0;     // !X -> X
    virtual Mor<S> comult(const Obj& x) const = 0;  // !X -> !X (x) !X
    virtual Mor<S> counit(const Obj& x) const = 0;  // !X -> k
    virtual Mor<S> nabla(const Obj& x) const = 0;   // !X (x) !X -> !X
    virtual Mor<S> unit(const Obj& x) const = 0;    // k -> !X
    virtual Mor<S> bang_map(const Mor<S>& f) const = 0;
    virtual Mor<S> d(const Obj& x) const = 0;      // !X (x) X -> !X
    virtual Mor<S> dcirc(const Obj& x) const = 0;  // !X -> !X (x) X
    virtual Mor<S> eta(const Obj& x) const = 0;    // X -> !X
    virtual Mor<S> r(const Obj& x) const = 0;      // !X (x) !X -> X
};

// chi = comult ; (!pi0 (x) !pi1)
template <Semiring S>
Mor<S> chi(const Modality<S>& m, const Obj& a, const Obj& b)
{
    return compose(m.comult(Obj::biproduct(a, b)),
                   tensor(m.bang_map(proj<S>(0, a, b)), m.bang_map(proj<S>(1, a, b))));
}

// chi^-1 = (!iota0 (x) !iota1) ; nabla
template <Semiring S>
Mor<S> chi_inv(const Modality<S>& m, const Obj& a, const Obj& b)
{
    return compose(tensor(m.bang_map(inj<S>(0, a, b)), m.bang_map(inj<S>(1, a, b))), m.nabla(Obj::biproduct(a, b)));
}

// eta = (u (x) 1) ; d
template <Semiring S>
Mor<S> eta_from_d(const Modality<S>& m, const Mor<S>& d, const Obj& x)
{
    return seq<S>({unitor_left_inv<S>(x), tensor(m.unit(x), identity<S>(x)), d});
}

// d = (1 (x) eta) ; nabla
template <Semiring S>
Mor<S> d_from_eta(const Modality<S>& m, const Mor<S>& eta, const Obj& x)
{
    return compose(tensor(identity<S>(m.bang(x)), eta), m.nabla(x));
}

// dcirc = comult ; (1 (x) eps)
template <Semiring S>
Mor<S> dcirc_from_comult(const Modality<S>& m, const Obj& x)
{
    return compose(m.comult(x), tensor(identity<S>(m.bang(x)), m.eps(x)));
}

// r = (1 (x) cap_A (x) 1) ; (d (x) sigma) ; (cup_!A (x) 1)
template <Semiring S>
Mor<S> r_from_d(const Modality<S>& m, const Mor<S>& d, const Obj& a)
{
    Obj ba = m.bang(a), k = Obj::unit();
    if (!(d.dom() == Obj::tensor(ba, a)) || !(d.cod() == ba)) throw std::invalid_argument("r_from_d: d has the wrong shape");
    Obj s1 = Obj::tensor(Obj::tensor(ba, k), ba);
    Obj s2 = Obj::tensor(Obj::tensor(ba, Obj::tensor(a, a)), ba);
    Obj s3 = Obj::tensor(Obj::tensor(ba, a), Obj::tensor(a, ba));
    Obj s4 = Obj::tensor(ba, Obj::tensor(ba, a));
    Obj s5 = Obj::tensor(Obj::tensor(ba, ba), a);
    return seq<S>({rewire<S>(Obj::tensor(ba, ba), s1), tensor(tensor(identity<S>(ba), cap<S>(a)), identity<S>(ba)),
                   rewire<S>(s2, s3), tensor(d, symmetry<S>(a, ba)), rewire<S>(s4, s5),
                   tensor(cup<S>(ba), identity<S>(a)), rewire<S>(Obj::tensor(k, a), a)});
}

// d = (1 (x) cap_!A (x) 1) ; (r (x) sigma) ; (cup_A (x) 1)
template <Semiring S>
Mor<S> d_from_r(const Modality<S>& m, const Mor<S>& r, const Obj& a)
{
    Obj ba = m.bang(a), k = Obj::unit();
    if (!(r.dom() == Obj::tensor(ba, ba)) || !(r.cod() == a)) throw std::invalid_argument("d_from_r: r has the wrong shape");
    Obj s1 = Obj::tensor(Obj::tensor(ba, k), a);
    Obj s2 = Obj::tensor(Obj::tensor(ba, Obj::tensor(ba, ba)), a);
    Obj s3 = Obj::tensor(Obj::tensor(ba, ba), Obj::tensor(ba, a));
    Obj s4 = Obj::tensor(a, Obj::tensor(a, ba));
    Obj s5 = Obj::tensor(Obj::tensor(a, a), ba);
    return seq<S>({rewire<S>(Obj::tensor(ba, a), s1), tensor(tensor(identity<S>(ba), cap<S>(ba)), identity<S>(a)),
                   rewire<S>(s2, s3), tensor(r, symmetry<S>(ba, a)), rewire<S>(s4, s5),
                   tensor(cup<S>(a), identity<S>(ba)), rewire<S>(Obj::tensor(k, ba), ba)});
}

// r = (1 (x) dcirc) ; (cup (x) 1)
template <Semiring S>
Mor<S> r_from_dcirc(const Modality<S>& m, const Mor<S>& dcirc, const Obj& a)
{
    Obj ba = m.bang(a);
    return seq<S>({tensor(identity<S>(ba), dcirc), rewire<S>(Obj::tensor(ba, Obj::tensor(ba, a)), Obj::tensor(Obj::tensor(ba, ba), a)),
                   tensor(cup<S>(ba), identity<S>(a)), rewire<S>(Obj::tensor(Obj::unit(), a), a)});
}

}  // namespace rdc
