#pragma once

#include "semiring.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace rdc {

// Finite multiset over the alphabet {0, ..., alphabet-1}, kept as a sorted index sequence.
struct Bag {
    std::uint32_t alphabet = 0;
    std::vector<std::uint32_t> elems;

    Bag() = default;
    Bag(std::uint32_t n, std::vector<std::uint32_t> e) : alphabet(n), elems(std::move(e))
    {
        for (auto x : elems)
            if (x >= alphabet) throw std::out_of_range("bag element outside alphabet");
        std::sort(elems.begin(), elems.end());
    }

    std::size_t degree() const { return elems.size(); }
    std::size_t mult(std::uint32_t x) const
    {
        auto [lo, hi] = std::equal_range(elems.begin(), elems.end(), x);
        return static_cast<std::size_t>(hi - lo);
    }

    friend bool operator==(const Bag&, const Bag&) = default;
    // degree-major, then lexicographic
    friend std::strong_ordering operator<=>(const Bag& a, const Bag& b)
    {
        if (auto c = a.alphabet <=> b.alphabet; c != 0) return c;
        if (auto c = a.elems.size() <=> b.elems.size(); c != 0) return c;
        return a.elems <=> b.elems;
    }
};

inline std::string letter(std::uint32_t i)
{
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "x" + std::to_string(i);
}

inline std::string to_string(const Bag& b)
{
    std::string s = "[";
    for (std::size_t i = 0; i < b.elems.size(); ++i) {
        if (i) s += ",";
        s += letter(b.elems[i]);
    }
    return s + "]";
}

inline void check_alphabet(const Bag& a, const Bag& b)
{
    if (a.alphabet != b.alphabet) throw std::invalid_argument("bag alphabet mismatch");
}

inline Bag bag_union(const Bag& a, const Bag& b)
{
    check_alphabet(a, b);
    Bag r;
    r.alphabet = a.alphabet;
    r.elems.resize(a.elems.size() + b.elems.size());
    std::merge(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(), r.elems.begin());
    return r;
}

struct Removal {
    std::uint32_t elem;
    Bag rest;
    std::size_t multiplicity;
};

inline std::vector<Removal> bag_removals(const Bag& b)
{
    std::vector<Removal> out;
    for (std::size_t i = 0; i < b.elems.size();) {
        std::size_t j = i;
        while (j < b.elems.size() && b.elems[j] == b.elems[i]) ++j;
        Bag rest = b;
        rest.elems.erase(rest.elems.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back({b.elems[i], std::move(rest), j - i});
        i = j;
    }
    return out;
}

// distinct elements with their multiplicities, in increasing order
inline std::vector<std::pair<std::uint32_t, std::size_t>> runs(const Bag& b)
{
    std::vector<std::pair<std::uint32_t, std::size_t>> r;
    for (auto x : b.elems) {
        if (!r.empty() && r.back().first == x)
            ++r.back().second;
        else
            r.push_back({x, 1});
    }
    return r;
}

inline std::vector<std::pair<Bag, Bag>> bag_splits(const Bag& b)
{
    auto rs = runs(b);
    std::vector<std::pair<Bag, Bag>> out;
    std::vector<std::size_t> take(rs.size(), 0);
    for (;;) {
        Bag l{b.alphabet, {}}, r{b.alphabet, {}};
        for (std::size_t i = 0; i < rs.size(); ++i) {
            l.elems.insert(l.elems.end(), take[i], rs[i].first);
            r.elems.insert(r.elems.end(), rs[i].second - take[i], rs[i].first);
        }
        out.emplace_back(std::move(l), std::move(r));
        std::size_t i = 0;
        while (i < rs.size() && take[i] == rs[i].second) take[i++] = 0;
        if (i == rs.size()) break;
        ++take[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline natural binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    natural r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline natural shuffle_coeff(const Bag& a, const Bag& b)
{
    check_alphabet(a, b);
    natural r = 1;
    for (auto [x, m] : runs(a)) r *= binomial(m + b.mult(x), m);
    return r;
}

// multinomial count of ways to deal the elements of the union of parts into the parts
inline natural multinomial(const std::vector<Bag>& parts)
{
    if (parts.empty()) return 1;
    natural r = 1;
    Bag acc{parts.front().alphabet, {}};
    for (const auto& p : parts) {
        r *= shuffle_coeff(acc, p);
        acc = bag_union(acc, p);
    }
    return r;
}

inline std::vector<Bag> enumerate_bags(std::uint32_t alphabet, std::size_t max_degree)
{
    std::vector<Bag> out{Bag{alphabet, {}}};
    std::vector<Bag> layer = out;
    for (std::size_t d = 1; d <= max_degree && alphabet > 0; ++d) {
        std::vector<Bag> next;
        for (const auto& b : layer) {
            std::uint32_t start = b.elems.empty() ? 0 : b.elems.back();
            for (std::uint32_t x = start; x < alphabet; ++x) {
                Bag c = b;
                c.elems.push_back(x);
                next.push_back(std::move(c));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

using BagPartition = std::vector<Bag>;  // sorted multiset of parts

namespace detail {
inline void partitions_rec(std::uint32_t alphabet, const std::vector<std::uint32_t>& el, std::size_t i,
                           std::vector<Bag>& cur, std::size_t max_parts, std::set<BagPartition>& acc)
{
    if (i == el.size()) {
        BagPartition p = cur;
        std::sort(p.begin(), p.end());
        acc.insert(std::move(p));
        return;
    }
    for (std::size_t k = 0; k < cur.size(); ++k) {
        cur[k].elems.push_back(el[i]);
        partitions_rec(alphabet, el, i + 1, cur, max_parts, acc);
        cur[k].elems.pop_back();
    }
    if (cur.size() < max_parts) {
        cur.push_back(Bag{alphabet, {el[i]}});
        partitions_rec(alphabet, el, i + 1, cur, max_parts, acc);
        cur.pop_back();
    }
}
}  // namespace detail

// Nonempty parts only.
inline std::vector<BagPartition> bag_partitions_nonempty(const Bag& b, std::size_t max_parts)
{
    std::set<BagPartition> acc;
    std::vector<Bag> cur;
    cur.reserve(b.degree());
    if (b.degree() == 0) {
        acc.insert(BagPartition{});
    } else if (max_parts > 0) {
        cur.push_back(Bag{b.alphabet, {b.elems[0]}});
        detail::partitions_rec(b.alphabet, b.elems, 1, cur, max_parts, acc);
    }
    return {acc.begin(), acc.end()};
}

// Multisets of at most max_parts bags, possibly empty, whose union is b.
inline std::vector<BagPartition> bag_partitions(const Bag& b, std::size_t max_parts)
{
    std::vector<BagPartition> out;
    for (auto& p : bag_partitions_nonempty(b, max_parts)) {
        for (std::size_t e = 0; p.size() + e <= max_parts; ++e) {
            BagPartition q(e, Bag{b.alphabet, {}});
            q.insert(q.end(), p.begin(), p.end());
            out.push_back(std::move(q));
        }
    }
    std::sort(out.begin(), out.end(), [](const BagPartition& x, const BagPartition& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

}  // namespace rdc
