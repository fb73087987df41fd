#include "rdc/poly.hpp"

#include <gtest/gtest.h>

using namespace rdc;

namespace {

Poly x(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
Poly k(std::size_t n, long c) { return Poly::constant(n, rational(c)); }

std::vector<rational> eval(const PolyMap& f, const std::vector<rational>& p)
{
    std::vector<rational> out;
    for (const auto& c : f.comps) out.push_back(c.eval(p));
    return out;
}

}  // namespace

TEST(PolyParse, Monomial)
{
    auto f = parse_poly("x1^2*x2");
    ASSERT_EQ(f.n, 2u);
    ASSERT_EQ(f.m(), 1u);
    const auto& t = f.comps[0].terms();
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.begin()->first, (Poly::Exps{2, 1}));
    EXPECT_EQ(t.begin()->second, 1);
}

TEST(PolyParse, TupleAndArity)
{
    auto f = parse_poly("(x1 + 1, 3*x2)");
    EXPECT_EQ(f.m(), 2u);
    EXPECT_EQ(f.n, 2u);
    EXPECT_EQ(parse_poly("x1", 3).n, 3u);
    EXPECT_THROW(parse_poly("x1^-1"), ParseError);
    EXPECT_THROW(parse_poly("x1 +"), ParseError);
}

TEST(PolyAlgebra, Compose)
{
    auto f = parse_poly("x1 + 1"), g = parse_poly("x1^2");
    EXPECT_EQ(poly_compose(f, g), parse_poly("x1^2 + 2*x1 + 1"));
    EXPECT_EQ(poly_compose(g, f), parse_poly("x1^2 + 1"));
}

TEST(PolyAlgebra, PairingAndZero)
{
    EXPECT_EQ(poly_pair(poly_proj(0, 2, 3), poly_proj(1, 2, 3)), poly_id(5));
    auto f = parse_poly("(x1*x2, x2^3 - x1)");
    EXPECT_EQ(poly_add(f, poly_zero(2, 2)), f);
    EXPECT_EQ(poly_compose(poly_id(2), f), f);
    EXPECT_EQ(poly_compose(f, poly_id(2)), f);
}

TEST(PolyDerivative, Jacobian)
{
    auto j = jacobian(parse_poly("x1^2*x2"));
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0][0], k(2, 2) * x(2, 0) * x(2, 1));
    EXPECT_EQ(j[0][1], x(2, 0) * x(2, 0));
    auto jc = jacobian(parse_poly("7", 2));
    EXPECT_TRUE(jc[0][0].is_zero());
    EXPECT_TRUE(jc[0][1].is_zero());
    EXPECT_EQ(jacobian(parse_poly("x1"))[0][0], k(1, 1));
}

TEST(PolyDerivative, Reverse)
{
    auto r = R_poly(parse_poly("x1^2*x2"));
    ASSERT_EQ(r.n, 3u);
    ASSERT_EQ(r.m(), 2u);
    EXPECT_EQ(r.comps[0], k(3, 2) * x(3, 0) * x(3, 1) * x(3, 2));
    EXPECT_EQ(r.comps[1], x(3, 0) * x(3, 0) * x(3, 2));
    auto rp = R_poly(poly_proj(0, 1, 2));
    ASSERT_EQ(rp.m(), 3u);
    EXPECT_EQ(rp.comps[0], x(4, 3));
    EXPECT_TRUE(rp.comps[1].is_zero());
    EXPECT_TRUE(rp.comps[2].is_zero());
}

TEST(PolyDerivative, ForwardAgainstExactDifferenceQuotient)
{
    // for a quadratic, the central quotient (f(x+hv) - f(x-hv)) / 2h is exact
    auto f = parse_poly("x1^2");
    auto d = D_poly(f);
    EXPECT_EQ(d.comps[0], k(2, 2) * x(2, 0) * x(2, 1));
    auto g = parse_poly("(x1^2 + 3*x1*x2 - x2, x2^2)");
    auto dg = D_poly(g);
    rational h(1, 7);
    for (long a = -2; a <= 2; ++a)
        for (long b = -1; b <= 1; ++b) {
            std::vector<rational> p{rational(a), rational(b)}, v{rational(1, 3), rational(-2)};
            std::vector<rational> lo{p[0] - h * v[0], p[1] - h * v[1]}, hi{p[0] + h * v[0], p[1] + h * v[1]};
            auto fl = eval(g, lo), fh = eval(g, hi);
            auto got = eval(dg, {p[0], p[1], v[0], v[1]});
            for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(got[i], (fh[i] - fl[i]) / (2 * h));
        }
}

TEST(PolyDerivative, ChainRuleRD5)
{
    // R[f;g](x, t) = R[f](x, R[g](f(x), t))
    auto f = parse_poly("x1^2"), g = parse_poly("x1 + 1");
    auto lhs = R_poly(poly_compose(f, g));
    auto rg = R_poly(g);
    auto inner = rg.comps[0].substitute({f.comps[0].reindex(2, {0}), x(2, 1)}, 2);
    auto rhs = R_poly(f).comps[0].substitute({x(2, 0), inner}, 2);
    EXPECT_EQ(lhs.comps[0], rhs);
    EXPECT_EQ(lhs.comps[0], k(2, 2) * x(2, 0) * x(2, 1));
}

TEST(PolyDerivative, SymmetryRD7)
{
    // the mixed second derivative of x1*x2 is symmetric
    auto f = parse_poly("x1*x2");
    auto j = jacobian(f);
    EXPECT_EQ(j[0][0].partial(1), j[0][1].partial(0));
    EXPECT_EQ(j[0][0].partial(1), k(2, 1));
}

TEST(PolyDerivative, ReverseIsLinearInCotangent)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        auto f = random_poly_map(2, 2, rng);
        auto r = R_poly(f);
        for (const auto& c : r.comps)
            for (const auto& [e, coef] : c.terms()) EXPECT_EQ(e[2] + e[3], 1u) << f.str();
    }
}

TEST(PolyDerivative, ForwardFromReverse)
{
    // D[f](x, v) = <R[f](x, e_i), v> summed over output components
    for (auto text : {"x1^3", "(x1, x2)", "x1*x2 + x2"}) {
        auto f = parse_poly(text);
        auto d = D_poly(f), r = R_poly(f);
        std::size_t n = f.n, m = f.m();
        for (std::size_t i = 0; i < m; ++i) {
            Poly s(2 * n);
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<Poly> vals;
                for (std::size_t a = 0; a < n; ++a) vals.push_back(x(2 * n, a));
                for (std::size_t b = 0; b < m; ++b) vals.push_back(k(2 * n, b == i ? 1 : 0));
                s = s + r.comps[j].substitute(vals, 2 * n) * x(2 * n, n + j);
            }
            EXPECT_EQ(s, d.comps[i]) << text;
        }
    }
}

TEST(PolyRandom, SeededAndBounded)
{
    std::mt19937_64 a(3), b(3);
    for (int t = 0; t < 10; ++t) {
        auto f = random_poly_map(3, 2, a, 3), g = random_poly_map(3, 2, b, 3);
        EXPECT_EQ(f, g);
        for (const auto& c : f.comps) EXPECT_LE(c.degree(), 3u);
    }
}
