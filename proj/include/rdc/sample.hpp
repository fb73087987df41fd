#pragma once

#include "mor.hpp"

#include <random>
#include <vector>

namespace rdc {

using Rng = std::mt19937_64;

template <Semiring S>
Value<S> random_coeff(Rng& rng)
{
    if constexpr (std::is_same_v<typename S::value_type, bool>) {
        return true;
    } else {
        return S::from_natural(natural(std::uniform_int_distribution<int>(1, 3)(rng)));
    }
}

// Sparse random matrix over the given row and column labels.
template <Semiring S>
Mor<S> random_mor(const Obj& dom, const Obj& cod, const std::vector<Label>& rows, const std::vector<Label>& cols, Rng& rng,
                  double density = 0.35)
{
    std::bernoulli_distribution keep(density);
    std::vector<Entry<S>> es;
    for (auto a : rows)
        for (auto b : cols)
            if (keep(rng)) es.emplace_back(a, b, random_coeff<S>(rng));
    return from_entries<S>(dom, cod, es);
}

template <Semiring S>
Mor<S> random_mor(const Obj& dom, const Obj& cod, Rng& rng, double density = 0.35)
{
    return random_mor<S>(dom, cod, dom.basis(), cod.basis(), rng, density);
}

// The matrix with a single one at (a, b).
template <Semiring S>
Mor<S> basis_mor(const Obj& dom, const Obj& cod, Label a, Label b)
{
    return from_entries<S>(dom, cod, {Entry<S>{a, b, S::one()}});
}

// Every rank-one basis matrix between two small objects.
template <Semiring S>
std::vector<Mor<S>> basis_mors(const Obj& dom, const Obj& cod, const std::vector<Label>& rows, const std::vector<Label>& cols)
{
    std::vector<Mor<S>> out;
    for (auto a : rows)
        for (auto b : cols) out.push_back(basis_mor<S>(dom, cod, a, b));
    return out;
}

}  // namespace rdc
