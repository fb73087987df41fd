#include "rdc/bag.hpp"
#include "rdc/semiring.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rdc;

namespace {

Bag bag(std::uint32_t n, std::vector<std::uint32_t> e) { return Bag{n, std::move(e)}; }

template <class S>
std::vector<typename S::value_type> sample_values()
{
    std::vector<typename S::value_type> out;
    for (int i = 0; i < 6; ++i) out.push_back(S::from_natural(natural(i)));
    return out;
}

// n! computed by repeated multiplication, independent of the binomial table
natural fact(std::size_t n)
{
    natural r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

template <class S>
class SemiringAxioms : public ::testing::Test {};
using Carriers = ::testing::Types<Boolean, Natural, GF2, Rational>;
TYPED_TEST_SUITE(SemiringAxioms, Carriers);

TYPED_TEST(SemiringAxioms, CommutativeSemiring)
{
    using S = TypeParam;
    auto vs = sample_values<S>();
    for (const auto& a : vs)
        for (const auto& b : vs) {
            EXPECT_EQ(S::add(a, b), S::add(b, a));
            EXPECT_EQ(S::mul(a, b), S::mul(b, a));
            for (const auto& c : vs) {
                EXPECT_EQ(S::add(S::add(a, b), c), S::add(a, S::add(b, c)));
                EXPECT_EQ(S::mul(S::mul(a, b), c), S::mul(a, S::mul(b, c)));
                EXPECT_EQ(S::mul(a, S::add(b, c)), S::add(S::mul(a, b), S::mul(a, c)));
            }
        }
    for (const auto& a : vs) {
        EXPECT_EQ(S::add(a, S::zero()), a);
        EXPECT_EQ(S::mul(a, S::one()), a);
        EXPECT_TRUE(S::is_zero(S::mul(a, S::zero())));
    }
}

TEST(Semiring, SmallCarriersHaveTwoElements)
{
    EXPECT_TRUE(Boolean::add(true, true));
    EXPECT_FALSE(GF2::add(true, true));
    EXPECT_EQ(GF2::from_natural(3), true);
    EXPECT_EQ(GF2::from_natural(4), false);
}

TEST(Semiring, RationalIsExact)
{
    rational third = Rational::mul(1, rational(1) / 3);
    EXPECT_EQ(Rational::add(Rational::add(third, third), third), Rational::one());
    EXPECT_EQ(Rational::to_string(rational(6) / 4), "3/2");
}

TEST(Semiring, NaturalDoesNotSaturate)
{
    natural big = 1;
    for (int i = 0; i < 100; ++i) big = Natural::mul(big, 10);
    EXPECT_EQ(Natural::to_string(big).size(), 101u);
}

TEST(Bag, SortedAndDegree)
{
    Bag b = bag(3, {2, 0, 2});
    EXPECT_EQ(b.elems, (std::vector<std::uint32_t>{0, 2, 2}));
    EXPECT_EQ(b.degree(), 3u);
    EXPECT_EQ(b.mult(2), 2u);
    EXPECT_EQ(to_string(b), "[a,c,c]");
    EXPECT_THROW(bag(1, {1}), std::out_of_range);
}

TEST(Bag, Union)
{
    EXPECT_EQ(bag_union(bag(1, {0}), bag(1, {0})), bag(1, {0, 0}));
    EXPECT_EQ(bag_union(bag(2, {}), bag(2, {0, 1})), bag(2, {0, 1}));
    EXPECT_EQ(bag_union(bag(3, {0, 1}), bag(3, {0, 2})), bag(3, {0, 0, 1, 2}));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint32_t> el(0, 3), len(0, 4);
    for (int t = 0; t < 50; ++t) {
        std::vector<std::uint32_t> x, y, z;
        for (auto k = len(rng); k > 0; --k) x.push_back(el(rng));
        for (auto k = len(rng); k > 0; --k) y.push_back(el(rng));
        Bag a = bag(4, x), b = bag(4, y);
        std::merge(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(), std::back_inserter(z));
        EXPECT_EQ(bag_union(a, b).elems, z);
    }
}

TEST(Bag, Removals)
{
    auto r = bag_removals(bag(1, {0, 0}));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].elem, 0u);
    EXPECT_EQ(r[0].rest, bag(1, {0}));
    EXPECT_EQ(r[0].multiplicity, 2u);
    auto r2 = bag_removals(bag(2, {0, 1}));
    ASSERT_EQ(r2.size(), 2u);
    EXPECT_EQ(r2[0].rest, bag(2, {1}));
    EXPECT_EQ(r2[1].rest, bag(2, {0}));
    EXPECT_TRUE(bag_removals(bag(1, {})).empty());
}

TEST(Bag, Splits)
{
    auto s = bag_splits(bag(1, {0}));
    EXPECT_EQ(s.size(), 2u);
    auto s2 = bag_splits(bag(1, {0, 0}));
    ASSERT_EQ(s2.size(), 3u);
    EXPECT_EQ(s2[1], std::make_pair(bag(1, {0}), bag(1, {0})));
    EXPECT_EQ(bag_splits(bag(2, {0, 1})).size(), 4u);
    // count oracle: product of (multiplicity + 1)
    Bag b = bag(3, {0, 0, 0, 1, 2, 2});
    EXPECT_EQ(bag_splits(b).size(), 4u * 2u * 3u);
    for (const auto& [l, r] : bag_splits(b)) EXPECT_EQ(bag_union(l, r), b);
}

TEST(Bag, Shuffle)
{
    EXPECT_EQ(shuffle_coeff(bag(1, {0}), bag(1, {0})), 2);
    EXPECT_EQ(shuffle_coeff(bag(2, {0, 1}), bag(2, {})), 1);
    EXPECT_EQ(shuffle_coeff(bag(1, {0, 0}), bag(1, {0})), 3);
    // oracle: per element, u_x! / (a_x! b_x!)
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint32_t> el(0, 2), len(0, 4);
    for (int t = 0; t < 40; ++t) {
        std::vector<std::uint32_t> x, y;
        for (auto k = len(rng); k > 0; --k) x.push_back(el(rng));
        for (auto k = len(rng); k > 0; --k) y.push_back(el(rng));
        Bag a = bag(3, x), b = bag(3, y), u = bag_union(a, b);
        natural expect = 1;
        for (std::uint32_t c = 0; c < 3; ++c) expect = expect * fact(u.mult(c)) / (fact(a.mult(c)) * fact(b.mult(c)));
        EXPECT_EQ(shuffle_coeff(a, b), expect);
        EXPECT_EQ(shuffle_coeff(a, b), shuffle_coeff(b, a));
    }
}

TEST(Bag, ShuffleAssociativity)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint32_t> el(0, 1), len(0, 3);
    for (int t = 0; t < 40; ++t) {
        std::vector<std::uint32_t> x, y, z;
        for (auto k = len(rng); k > 0; --k) x.push_back(el(rng));
        for (auto k = len(rng); k > 0; --k) y.push_back(el(rng));
        for (auto k = len(rng); k > 0; --k) z.push_back(el(rng));
        Bag a = bag(2, x), b = bag(2, y), c = bag(2, z);
        EXPECT_EQ(shuffle_coeff(bag_union(a, b), c) * shuffle_coeff(a, b), shuffle_coeff(a, bag_union(b, c)) * shuffle_coeff(b, c));
    }
}

TEST(Bag, Enumerate)
{
    auto e = enumerate_bags(1, 2);
    ASSERT_EQ(e.size(), 3u);
    EXPECT_EQ(e[2], bag(1, {0, 0}));
    auto f = enumerate_bags(2, 1);
    EXPECT_EQ(f, (std::vector<Bag>{bag(2, {}), bag(2, {0}), bag(2, {1})}));
    EXPECT_EQ(enumerate_bags(5, 0).size(), 1u);
    // count oracle: C(n + D, D)
    EXPECT_EQ(enumerate_bags(3, 4).size(), 35u);
    auto g = enumerate_bags(3, 3);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
}

TEST(Bag, Partitions)
{
    auto p = bag_partitions(bag(1, {}), 2);
    ASSERT_EQ(p.size(), 3u);
    EXPECT_TRUE(p[0].empty());
    EXPECT_EQ(p[2].size(), 2u);
    auto q = bag_partitions(bag(1, {0}), 1);
    ASSERT_EQ(q.size(), 1u);
    EXPECT_EQ(q[0], (BagPartition{bag(1, {0})}));
    auto r = bag_partitions(bag(2, {0, 1}), 2);
    auto has = [&](BagPartition x) { return std::find(r.begin(), r.end(), x) != r.end(); };
    EXPECT_TRUE(has({bag(2, {0}), bag(2, {1})}));
    EXPECT_TRUE(has({bag(2, {0, 1})}));
    EXPECT_TRUE(has({bag(2, {}), bag(2, {0, 1})}));
    for (const auto& part : r) {
        Bag u{2, {}};
        for (const auto& b : part) u = bag_union(u, b);
        EXPECT_EQ(u, bag(2, {0, 1}));
    }
}

TEST(Bag, MultinomialMatchesRepeatedShuffle)
{
    EXPECT_EQ(multinomial({bag(1, {0}), bag(1, {0}), bag(1, {0})}), 6);
    EXPECT_EQ(multinomial({bag(2, {0, 1}), bag(2, {})}), 1);
}
