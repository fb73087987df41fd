#include "rdc/mor.hpp"
#include "rdc/sample.hpp"

#include <gtest/gtest.h>

#include <unordered_set>

using namespace rdc;

namespace {

Label at(const Obj& o, std::size_t i) { return o.basis()[i]; }

// dense oracle: matrices as nested vectors over basis positions
template <Semiring S>
std::vector<std::vector<Value<S>>> dense(const Mor<S>& f)
{
    auto rows = f.dom().basis(), cols = f.cod().basis();
    std::vector<std::vector<Value<S>>> m(rows.size(), std::vector<Value<S>>(cols.size(), S::zero()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = f.at(rows[i], cols[j]);
    return m;
}

}  // namespace

TEST(Obj, BasisIsDistinctAndDeterministic)
{
    Obj a = Obj::alphabet(3);
    auto b = a.basis();
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(render(b[0]), "a");
    EXPECT_EQ(render(b[2]), "c");
    Obj t = Obj::tensor(a, Obj::alphabet(2));
    EXPECT_EQ(t.basis().size(), 6u);
    EXPECT_EQ(t.basis(), Obj::tensor(Obj::alphabet(3), Obj::alphabet(2)).basis());
    auto tb = t.basis();
    std::unordered_set<Label> seen(tb.begin(), tb.end());
    EXPECT_EQ(seen.size(), 6u);
}

TEST(Mor, Compose)
{
    Obj a = Obj::atoms({"a"}), b = Obj::atoms({"b"}), b2 = Obj::atoms({"b", "b'"}), c = Obj::atoms({"c"});
    auto f = from_entries<Boolean>(a, b, {{at(a, 0), at(b, 0), true}});
    auto g = from_entries<Boolean>(b, c, {{at(b, 0), at(c, 0), true}});
    EXPECT_TRUE(compose(f, g).at(at(a, 0), at(c, 0)));
    auto n2 = from_entries<Natural>(a, a, {{at(a, 0), at(a, 0), natural(2)}});
    auto n3 = from_entries<Natural>(a, a, {{at(a, 0), at(a, 0), natural(3)}});
    EXPECT_EQ(compose(n2, n3).at(at(a, 0), at(a, 0)), 6);
    auto f2 = from_entries<Boolean>(a, b2, {{at(a, 0), at(b2, 0), true}});
    auto g2 = from_entries<Boolean>(b2, c, {{at(b2, 1), at(c, 0), true}});
    EXPECT_TRUE(mor_equal(compose(f2, g2), zero<Boolean>(a, c)).equal);
}

TEST(Mor, ComposeMatchesDenseProduct)
{
    Rng rng(5);
    Obj a = Obj::alphabet(3), b = Obj::alphabet(4), c = Obj::alphabet(2);
    for (int t = 0; t < 10; ++t) {
        auto f = random_mor<Natural>(a, b, rng, 0.5), g = random_mor<Natural>(b, c, rng, 0.5);
        auto F = dense(f), G = dense(g), H = dense(compose(f, g));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 2; ++k) {
                natural s = 0;
                for (std::size_t j = 0; j < 4; ++j) s += F[i][j] * G[j][k];
                EXPECT_EQ(H[i][k], s);
            }
    }
}

TEST(Mor, MonoidalBasics)
{
    Rng rng(1);
    Obj a = Obj::alphabet(2), b = Obj::alphabet(3);
    auto f = random_mor<Natural>(a, b, rng);
    EXPECT_TRUE(mor_equal(add(f, zero<Natural>(a, b)), f).equal);
    EXPECT_TRUE(mor_equal(compose(symmetry<Natural>(a, b), symmetry<Natural>(b, a)), identity<Natural>(Obj::tensor(a, b))).equal);
    EXPECT_TRUE(mor_equal(tensor(identity<Natural>(a), identity<Natural>(b)), identity<Natural>(Obj::tensor(a, b))).equal);
}

TEST(Mor, Biproduct)
{
    Obj a = Obj::atoms({"a"}), b = Obj::atoms({"b"});
    EXPECT_TRUE(mor_equal(compose(inj<Boolean>(0, a, b), proj<Boolean>(0, a, b)), identity<Boolean>(a)).equal);
    EXPECT_TRUE(mor_equal(compose(inj<Boolean>(0, a, b), proj<Boolean>(1, a, b)), zero<Boolean>(a, b)).equal);
    auto p0 = proj<Boolean>(0, a, b);
    EXPECT_TRUE(p0.at(Label::tag(0, at(a, 0)), at(a, 0)));
    EXPECT_FALSE(p0.at(Label::tag(1, at(b, 0)), at(a, 0)));
    EXPECT_EQ(dump_tsv(p0), "0:a\ta\t1\n");
}

TEST(Mor, CupCapSnake)
{
    Obj a = Obj::alphabet(2);
    auto c = cup<Boolean>(a);
    EXPECT_EQ(dump_tsv(c), "(a,a)\t*\t1\n(b,b)\t*\t1\n");
    Obj k = Obj::unit();
    EXPECT_TRUE(mor_equal(cup<Boolean>(k), seq<Boolean>({rewire<Boolean>(Obj::tensor(k, k), k)})).equal);
    auto snake = seq<Natural>({unitor_right_inv<Natural>(a), tensor(identity<Natural>(a), cap<Natural>(a)), assoc_inv<Natural>(a, a, a),
                               tensor(cup<Natural>(a), identity<Natural>(a)), unitor_left<Natural>(a)});
    EXPECT_TRUE(mor_equal(snake, identity<Natural>(a)).equal);
}

TEST(Mor, Star)
{
    Obj a = Obj::atoms({"a"}), b = Obj::atoms({"b"});
    auto f = from_entries<Boolean>(a, b, {{at(a, 0), at(b, 0), true}});
    EXPECT_TRUE(star(f).at(at(b, 0), at(a, 0)));
    EXPECT_TRUE(mor_equal(star_via_cupcap(f), star(f)).equal);
    Obj x = Obj::alphabet(2);
    EXPECT_TRUE(mor_equal(star(identity<Rational>(x)), identity<Rational>(x)).equal);
    Label p = at(x, 0), q = at(x, 1);
    auto m = from_entries<Rational>(x, x, {{p, p, rational(2)}, {q, p, rational(1)}, {q, q, rational(3)}});
    auto s = star(m);
    EXPECT_EQ(s.at(p, p), 2);
    EXPECT_EQ(s.at(p, q), 1);
    EXPECT_EQ(s.at(q, p), 0);
    EXPECT_EQ(s.at(q, q), 3);
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
        auto g = random_mor<Natural>(Obj::alphabet(2), Obj::alphabet(3), rng);
        EXPECT_TRUE(mor_equal(star_via_cupcap(g), star(g)).equal);
    }
}

TEST(Mor, EqualityWitness)
{
    Obj a = Obj::alphabet(2);
    auto f = from_entries<Natural>(a, a, {{at(a, 0), at(a, 1), natural(1)}});
    EXPECT_TRUE(mor_equal(f, f).equal);
    auto c = mor_equal(f, add(f, f));
    ASSERT_FALSE(c.equal);
    ASSERT_TRUE(c.witness);
    EXPECT_EQ(c.witness->lhs, 1);
    EXPECT_EQ(c.witness->rhs, 2);
    auto fb = from_entries<Boolean>(a, a, {{at(a, 0), at(a, 1), true}});
    EXPECT_TRUE(mor_equal(fb, add(fb, fb)).equal);
}

TEST(Mor, DumpIsCanonical)
{
    Obj a = Obj::alphabet(2);
    auto f = from_entries<Natural>(a, a, {{at(a, 1), at(a, 0), natural(3)}, {at(a, 0), at(a, 1), natural(1)}, {at(a, 0), at(a, 0), natural(2)}});
    EXPECT_EQ(dump_tsv(f), "a\ta\t2\na\tb\t1\nb\ta\t3\n");
}
