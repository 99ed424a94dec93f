#include "cmorder/principal.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cmorder;

namespace {

AlgElement elem(const AlgebraPtr& alg, std::vector<Rat> c) {
    c.resize(alg->degree());
    return c;
}

FracIdeal ideal(const Order& s, const std::vector<AlgElement>& gens) {
    return ideal_from_generators(s.algebra(), gens, &s.lattice());
}

}  // namespace

TEST(Geometry, T2MatchesTraceOfConjugateProduct) {
    // In Q(i), T2(a + bi) = 2(a^2 + b^2).
    auto alg = EtaleAlgebra::parse("1,0,1");
    Embedding emb(alg);
    EXPECT_NEAR(static_cast<double>(emb.t2(elem(alg, {3, 4}))), 50.0, 1e-12);
    // Totally real: T2(x) = Tr(x^2).
    auto r = EtaleAlgebra::parse("-1,-3,0,1");
    Embedding er(r);
    auto x = elem(r, {1, 2, -1});
    EXPECT_NEAR(static_cast<double>(er.t2(x)), r->trace(r->mul(x, x)).get_d(), 1e-9);
}

TEST(Geometry, EnumerationCountsMatchBruteForce) {
    // Z^2 inside Q(sqrt(-2)) with T2(a + b sqrt(-2)) = 2a^2 + 4b^2.
    auto alg = EtaleAlgebra::parse("2,0,1");
    Embedding emb(alg);
    auto rb = lll_reduce({elem(alg, {1, 0}), elem(alg, {7, 1})}, emb);
    for (long double bound : {3.0L, 10.0L, 40.0L}) {
        std::size_t count = 0;
        enumerate_short(rb, bound, 1u << 20, [&](const AlgElement&) { return ++count, true; });
        std::size_t brute = 0;
        for (int a = -20; a <= 20; ++a)
            for (int b = -20; b <= 20; ++b)
                if ((a || b) && 2 * a * a + 4 * b * b <= bound) ++brute;
        EXPECT_EQ(2 * count, brute) << static_cast<double>(bound);
    }
}

TEST(Geometry, Components) {
    auto split = EtaleAlgebra::parse("-1,0,1");
    const auto& c = algebra_components(split);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].degree, 1u);
    EXPECT_EQ(unit_rank(split), 0u);

    auto field = EtaleAlgebra::parse("-2,0,1");
    EXPECT_EQ(algebra_components(field).size(), 1u);
    EXPECT_EQ(unit_rank(field), 1u);
    EXPECT_EQ(algebra_components(field)[0].discriminant, 8);

    // (x^2 + 1)(x^2 - 2): an imaginary and a real quadratic factor.
    auto mixed = EtaleAlgebra::parse("-2,0,-1,0,1");
    const auto& m = algebra_components(mixed);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(unit_rank(mixed), 1u);
    std::multiset<std::string> discs;
    for (const auto& x : m) discs.insert(x.discriminant.get_str());
    EXPECT_EQ(discs, (std::multiset<std::string>{"-4", "8"}));

    // The sextic factors as (x^2 - 5x + 16)(x^4 - x^3 - 15x^2 - 16x + 256).
    auto ex = EtaleAlgebra::parse("4096,-1536,96,43,6,-6,1");
    const auto& e = algebra_components(ex);
    ASSERT_EQ(e.size(), 2u);
    std::multiset<std::size_t> degs{e[0].degree, e[1].degree};
    EXPECT_EQ(degs, (std::multiset<std::size_t>{2, 4}));
    EXPECT_EQ(unit_rank(ex), 1u);
}

TEST(Principal, GaussianAndMinusFive) {
    auto gi = EtaleAlgebra::parse("1,0,1");
    auto zi = Order::equation_order(gi);
    auto r = is_principal(ideal(zi, {elem(gi, {1, 1})}), zi);
    ASSERT_EQ(r.status, Principality::yes);
    EXPECT_EQ(abs(gi->norm(*r.generator)), 2);
    EXPECT_EQ(is_principal(zi.lattice(), zi).status, Principality::yes);
    // (3 + 4i, 5 * 7) = (2 + i)... built from two generators.
    auto two = is_principal(ideal(zi, {elem(gi, {5, 0}), elem(gi, {2, 1})}), zi);
    EXPECT_EQ(two.status, Principality::yes);

    auto k = EtaleAlgebra::parse("5,0,1");
    auto o = Order::equation_order(k);
    auto p2 = ideal(o, {elem(k, {2, 0}), elem(k, {1, 1})});
    EXPECT_EQ(is_principal(p2, o).status, Principality::no);
    EXPECT_EQ(is_principal(product(p2, p2), o).status, Principality::yes);
    auto p3 = ideal(o, {elem(k, {3, 0}), elem(k, {1, 1})});
    EXPECT_EQ(is_principal(p3, o).status, Principality::no);
    EXPECT_EQ(is_principal(product(p2, p3), o).status, Principality::yes);
    EXPECT_THROW(is_principal(FracIdeal::from_elements(k, {elem(k, {1, 0}), elem(k, {0, 2})}), o), MathError);
}

TEST(Principal, ScaledIdealsArePrincipal) {
    std::mt19937_64 rng(3);
    for (const char* f : {"5,0,1", "-2,0,1", "-1,-3,0,1", "1,1,1,1,1"}) {
        auto alg = EtaleAlgebra::parse(f);
        auto o = maximal_order(alg);
        for (int t = 0; t < 4; ++t) {
            AlgElement x(alg->degree());
            for (auto& c : x) c = static_cast<long>(rng() % 11) - 5;
            if (alg->norm(x) == 0) continue;
            auto r = is_principal(o.lattice().scaled(x), o);
            EXPECT_EQ(r.status, Principality::yes) << f;
        }
    }
}

TEST(Principal, NonMaximalOrder) {
    // Over Z[2i] the ideal (1+i)Z[i] ∩ ... use the invertible ideal (3, 1+2i) which is principal
    // iff some element of norm 3 exists: there is none.
    auto gi = EtaleAlgebra::parse("4,0,1");  // pi = 2i
    auto s = Order::equation_order(gi);
    auto q5 = ideal(s, {elem(gi, {5, 0}), elem(gi, {1, 1})});  // pi = 2i, 1 + 2i has norm 5
    EXPECT_EQ(is_principal(q5, s).status, Principality::yes);
    auto q3 = ideal(s, {elem(gi, {3, 0})});
    EXPECT_EQ(is_principal(q3, s).status, Principality::yes);
}
