#include "cmorder/lattice.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cmorder;

namespace {

AlgElement el(std::initializer_list<Rat> v) { return AlgElement(v); }

FracIdeal span(const AlgebraPtr& k, std::vector<AlgElement> v) { return FracIdeal::from_elements(k, v); }

}  // namespace

TEST(Lattice, Construction) {
    auto k = EtaleAlgebra::parse("5,0,1");
    auto S = span(k, {k->one(), k->gen()});
    EXPECT_EQ(S, FracIdeal::equation_lattice(k));
    EXPECT_EQ(S.denom(), 1);
    EXPECT_EQ(S.basis(), IntMatrix::identity(2));
    auto p2 = ideal_from_generators(k, {el({2, 0}), el({1, 1})}, &S);
    EXPECT_EQ(index(S, p2), 2);
    auto q = EtaleAlgebra::parse("-1,1");
    auto half = span(q, {el({Rat(1, 2)})});
    EXPECT_EQ(half.denom(), 2);
    EXPECT_TRUE(half.contains(el({Rat(1, 2)})));
    EXPECT_FALSE(FracIdeal::equation_lattice(q).contains(el({Rat(1, 2)})));
    EXPECT_TRUE(S.contains(el({0, 0})));
    EXPECT_THROW(span(k, {k->one(), el({2, 0})}), MathError);
}

TEST(Lattice, SumProductIntersect) {
    auto k = EtaleAlgebra::parse("5,0,1");
    auto S = FracIdeal::equation_lattice(k);
    auto p2 = ideal_from_generators(k, {el({2, 0}), el({1, 1})}, &S);
    EXPECT_EQ(sum(p2, p2), p2);
    EXPECT_EQ(product(S, p2), p2);
    // Brute-force product: span of all generator products.
    std::vector<AlgElement> prods;
    for (auto& a : p2.basis_elements())
        for (auto& b : p2.basis_elements()) prods.push_back(k->mul(a, b));
    EXPECT_EQ(product(p2, p2), span(k, prods));
    EXPECT_EQ(product(p2, p2), S.scaled(Rat(2)));
    auto g = EtaleAlgebra::parse("1,0,1");
    auto Zi = FracIdeal::equation_lattice(g);
    EXPECT_EQ(intersect(Zi.scaled(Rat(2)), Zi.scaled(Rat(3))), Zi.scaled(Rat(6)));
}

TEST(Lattice, ColonAndDual) {
    auto g = EtaleAlgebra::parse("1,0,1");
    auto Zi = FracIdeal::equation_lattice(g);
    auto Z2i = span(g, {el({1, 0}), el({0, 2})});
    EXPECT_EQ(colon(Z2i, Z2i), Z2i);
    EXPECT_EQ(colon(Z2i, Zi), Zi.scaled(Rat(2)));
    EXPECT_EQ(oracle::colon_direct(Z2i, Zi), Zi.scaled(Rat(2)));
    auto x = el({3, 1});
    auto I = span(g, {el({5, 0}), el({1, 2})});
    I = product(I, Zi);
    EXPECT_EQ(colon(I, Zi.scaled(x)), I.scaled(*g->inverse(x)));

    auto q = EtaleAlgebra::parse("-1,1");
    EXPECT_EQ(trace_dual(FracIdeal::equation_lattice(q)), FracIdeal::equation_lattice(q));
    auto k = EtaleAlgebra::parse("5,0,1");
    auto S = FracIdeal::equation_lattice(k);
    // S^t = S / f'(pi) = S / (2 pi)
    auto two_pi = el({0, 2});
    EXPECT_EQ(trace_dual(S), S.scaled(*k->inverse(two_pi)));
    EXPECT_EQ(oracle::dual_direct(S), trace_dual(S));
}

TEST(Lattice, IndexAndQuotient) {
    auto g = EtaleAlgebra::parse("1,0,1");
    auto Zi = FracIdeal::equation_lattice(g);
    EXPECT_EQ(index(Zi, Zi), 1);
    EXPECT_EQ(index(Zi, Zi.scaled(Rat(2))), 4);
    EXPECT_TRUE(quotient(Zi, Zi).divisors.empty());
    EXPECT_EQ(quotient(Zi, Zi.scaled(Rat(2))).divisors, (std::vector<Int>{2, 2}));
    EXPECT_THROW(quotient(Zi.scaled(Rat(2)), Zi), MathError);
    auto k = EtaleAlgebra::parse("5,0,1");
    auto S = FracIdeal::equation_lattice(k);
    auto p2 = ideal_from_generators(k, {el({2, 0}), el({1, 1})}, &S);
    EXPECT_EQ(index(S, p2), 2);
}

TEST(Lattice, RandomProperties) {
    std::mt19937_64 rng(42);
    const char* polys[] = {"5,0,1", "-2,0,0,1", "3,1,-4,0,1", "-1,0,1", "2,-1,0,3,0,1"};
    for (auto* p : polys) {
        auto k = EtaleAlgebra::parse(p);
        for (int t = 0; t < 25; ++t) {
            auto I = oracle::random_lattice(rng, k), J = oracle::random_lattice(rng, k);
            auto It = trace_dual(I);
            EXPECT_EQ(trace_dual(It), I);
            EXPECT_EQ(It, oracle::dual_direct(I));
            EXPECT_EQ(product(I, trace_dual(J)), trace_dual(colon(J, I)));
            EXPECT_EQ(colon(I, J), oracle::colon_direct(I, J));
            EXPECT_EQ(intersect(I, J), oracle::intersect_direct(I, J));
            auto Jsub = intersect(I, J);
            auto q1 = quotient(I, Jsub), q2 = quotient(trace_dual(Jsub), It);
            EXPECT_EQ(q1.divisors, q2.divisors);
            EXPECT_EQ(Rat(q1.order), index(I, Jsub));
            auto L = oracle::random_lattice(rng, k);
            EXPECT_EQ(index(I, L), index(I, J) * index(J, L));
            // Colon maximality on sampled elements.
            auto C = colon(I, J);
            for (int s = 0; s < 5; ++s) {
                AlgElement x(k->degree());
                for (auto& c : x) {
                    c = Rat(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4));
                    c.canonicalize();
                }
                bool inside = true;
                for (auto& b : J.basis_elements()) inside = inside && I.contains(k->mul(x, b));
                EXPECT_EQ(inside, C.contains(x));
            }
            EXPECT_TRUE(I.contains(Jsub) && J.contains(Jsub));
            EXPECT_TRUE(sum(I, J).contains(I));
        }
    }
}

TEST(Lattice, FiniteQuotientRoundTrip) {
    std::mt19937_64 rng(8);
    auto k = EtaleAlgebra::parse("3,1,-4,0,1");
    for (int t = 0; t < 20; ++t) {
        auto I = oracle::random_lattice(rng, k);
        auto J = intersect(I, oracle::random_lattice(rng, k));
        FiniteQuotient q(I, J);
        Int ord = 1;
        for (auto& d : q.divisors()) ord *= d;
        EXPECT_EQ(Rat(ord), index(I, J));
        for (int s = 0; s < 10; ++s) {
            std::vector<Int> c;
            for (auto& d : q.divisors()) c.push_back(Int(static_cast<unsigned long>(rng() % 1000)) % d);
            EXPECT_EQ(q.coords(q.lift(c)), c);
        }
        for (auto& b : J.basis_elements())
            for (auto& c : q.coords(b)) EXPECT_EQ(c, 0);
    }
}

TEST(Lattice, IntegerWitnessAndJson) {
    std::mt19937_64 rng(2);
    auto k = EtaleAlgebra::parse("-2,0,0,1");
    auto S = FracIdeal::equation_lattice(k);
    for (int t = 0; t < 20; ++t) {
        auto I = oracle::random_ideal(rng, S);
        Rat m(I.min_integer_scaled(), I.denom());
        m.canonicalize();
        AlgElement w(k->degree());
        w[0] = m;
        EXPECT_TRUE(I.contains(w));
        auto j = to_json(I);
        EXPECT_EQ(fracideal_from_json(k, j), I);
    }
}
