#include "rdc/bang.hpp"
#include "rdc/cokleisli.hpp"
#include "rdc/ext2.hpp"
#include "rdc/laws.hpp"
#include "rdc/sample.hpp"

#include <gtest/gtest.h>

using namespace rdc;

namespace {

Label bag(std::vector<Label> e) { return Label::bag(std::move(e)); }

template <Semiring S>
laws::Outcome same(const KlMor<S>& f, const KlMor<S>& g)
{
    EXPECT_EQ(f.dom, g.dom);
    EXPECT_EQ(f.cod, g.cod);
    return laws::leveled_compare<S>([&] { return std::pair{f.body, g.body}; });
}

template <Semiring S>
KlMor<S> random_kl(const Modality<S>& m, const Obj& a, const Obj& b, std::size_t w, Rng& rng)
{
    std::vector<Label> rows;
    for (auto l : m.bang(a).basis())
        if (m.exact() || l.size() <= w) rows.push_back(l);
    return {a, b, random_mor<S>(m.bang(a), b, rows, b.basis(), rng), m.exact() ? 0 : w};
}

struct BoolFixture : ::testing::Test {
    BagModality<Boolean> m{{3, 2, CoeffPolicy::named("default")}};
    KlCat<Boolean> C{m};
    Obj A = Obj::atoms({"a"}), B = Obj::atoms({"b"});
    Label a = A.basis()[0], b = B.basis()[0];
    KlMor<Boolean> f{A, B, from_entries<Boolean>(m.bang(A), B, {{bag({a}), b, true}}), 3};
};

}  // namespace

TEST_F(BoolFixture, ForwardDerivativeOfSingleton)
{
    auto df = C.D(f);
    EXPECT_EQ(dump_tsv(df.body), "[1:a]\tb\t1\n");
}

TEST_F(BoolFixture, ReverseDerivativeOfSingleton)
{
    auto rf = C.R(f);
    EXPECT_EQ(dump_tsv(rf.body), "[1:b]\ta\t1\n");
}

TEST_F(BoolFixture, IdentitiesAndProjections)
{
    EXPECT_TRUE(same(C.compose(C.id(A), f), f).equal);
    EXPECT_TRUE(same(C.compose(f, C.id(B)), f).equal);
    EXPECT_TRUE(same(C.D(C.id(A)), C.proj(1, A, A)).equal);
    EXPECT_TRUE(same(C.R(C.id(A)), C.proj(1, A, A)).equal);
    EXPECT_TRUE(same(C.R(C.proj(0, A, B)), C.compose(C.proj(1, C.product(A, B), A), C.inj(0, A, B))).equal);
    EXPECT_TRUE(same(C.compose(C.inj(0, A, B), C.proj(0, A, B)), C.id(A)).equal);
}

TEST_F(BoolFixture, ThreeReverseConstructionsAgree)
{
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        auto g = random_kl(m, A, B, 3, rng);
        EXPECT_TRUE(same(C.R(g), C.R_dagger(g)).equal) << t;
        EXPECT_TRUE(same(C.R(g), C.R_cupcap(g)).equal) << t;
    }
    auto z = C.zero(A, B);
    EXPECT_TRUE(same(C.R_dagger(z), C.zero(C.product(A, B), A)).equal);
}

TEST_F(BoolFixture, Associativity)
{
    Rng rng(8);
    for (int t = 0; t < 5; ++t) {
        auto g = random_kl(m, A, B, 2, rng), h = random_kl(m, B, A, 2, rng), k = random_kl(m, A, B, 2, rng);
        auto o = same(C.compose(C.compose(g, h), k), C.compose(g, C.compose(h, k)));
        EXPECT_TRUE(o.equal) << t;
    }
}

TEST_F(BoolFixture, LiftIsFunctorialAndLinear)
{
    Obj X = Obj::alphabet(2);
    Rng rng(2);
    for (int t = 0; t < 5; ++t) {
        auto g = random_mor<Boolean>(X, B, rng), h = random_mor<Boolean>(B, X, rng);
        EXPECT_TRUE(same(C.compose(C.lift(g), C.lift(h)), C.lift(compose(g, h))).equal);
        EXPECT_TRUE(is_linear(m, C.lift(g).body).equal);
        EXPECT_TRUE(is_linear_eta(m, C.lift(g).body).equal);
    }
    EXPECT_TRUE(is_linear(m, C.zero(A, B).body).equal);
    // every bag to b
    auto c = make_mor<Boolean>(m.bang(A), B, [this](Label) { return RowVec<Boolean>{{b, true}}; });
    EXPECT_FALSE(is_linear(m, c).equal);
}

TEST_F(BoolFixture, LinearInContext)
{
    Fibration<Boolean> F(m);
    Obj X = Obj::atoms({"x"});
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        std::vector<Label> rows;
        Obj dom = Obj::tensor(m.bang(X), A);
        for (auto l : dom.basis())
            if (l.first().size() <= 2) rows.push_back(l);
        CtxMor<Boolean> g{X, A, B, random_mor<Boolean>(dom, B, rows, B.basis(), rng), 2};
        auto e = F.E(g);
        EXPECT_TRUE(is_linear_in_context(m, e.body, X, A).equal);
        auto back = F.E_inv(e);
        EXPECT_TRUE(laws::leveled_compare<Boolean>([&] { return std::pair{back.body, g.body}; }).equal);
    }
    EXPECT_TRUE(is_linear_in_context(m, C.proj(1, X, A).body, X, A).equal);
    auto c = from_entries<Boolean>(m.bang(Obj::biproduct(X, A)), B, {{bag({}), b, true}});
    EXPECT_FALSE(is_linear_in_context(m, c, X, A).equal);
    EXPECT_THROW(F.E_inv(KlMor<Boolean>{Obj::biproduct(X, A), B, c, 1}), std::invalid_argument);
}

TEST_F(BoolFixture, FibreOperations)
{
    Fibration<Boolean> F(m);
    Obj X = Obj::atoms({"x"});
    auto id = F.id(X, A);
    auto dg = F.dagger(id);
    EXPECT_TRUE(mor_equal(dg.body, id.body).equal);
    auto t = F.tensor(F.id(X, A), F.id(X, B));
    EXPECT_TRUE(mor_equal(t.body, F.id(X, Obj::tensor(A, B)).body).equal);
    auto p = F.lift(X, proj<Boolean>(0, A, B));
    EXPECT_TRUE(mor_equal(F.dagger(p).body, F.lift(X, inj<Boolean>(0, A, B)).body).equal);
    auto e = F.E(F.id(X, A));
    EXPECT_TRUE(same(e, C.proj(1, X, A)).equal);
}

TEST_F(BoolFixture, CartesianLeftAdditiveStructure)
{
    auto plus = C.add(C.proj(0, A, A), C.proj(1, A, A));
    auto sum = C.compose(C.pair(C.id(A), C.id(A)), plus);
    EXPECT_TRUE(same(sum, C.add(C.id(A), C.id(A))).equal);
}

TEST(ExtCoKleisli, ThreeReverseConstructionsAgree)
{
    ExtModality m;
    KlCat<GF2> C(m);
    Obj A = Obj::vectors(2), B = Obj::vectors(1, "w");
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
        auto g = random_kl(m, A, B, 0, rng);
        EXPECT_TRUE(mor_equal(C.R(g).body, C.R_dagger(g).body).equal) << t;
        EXPECT_TRUE(mor_equal(C.R(g).body, C.R_cupcap(g).body).equal) << t;
    }
}
