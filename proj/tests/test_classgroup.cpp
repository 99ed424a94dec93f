#include "cmorder/classgroup.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace cmorder;

namespace {

// Number of reduced primitive positive definite forms of discriminant D < 0.
long form_class_number(long D) {
    long h = 0;
    for (long a = 1; 3 * a * a <= -D; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            ++h;
        }
    return h;
}

long field_discriminant(long d) { return d % 4 == 3 ? -d : -4 * d; }

Int product_of(const std::vector<Int>& v) {
    Int p = 1;
    for (const auto& x : v) p *= x;
    return p;
}

// log of the largest absolute conjugate of a unit of a real quadratic field.
double regulator(const AlgebraPtr& alg, const AlgElement& u) {
    Embedding emb(alg);
    double best = 0;
    for (const auto& z : emb.conjugates(u)) best = std::max(best, std::abs(std::log(std::abs(z.re.to_d()))));
    return best;
}

}  // namespace

TEST(ClassGroup, ImaginaryQuadraticMatchesReducedForms) {
    for (long d : {1, 2, 5, 6, 10, 13, 14, 17, 21, 23, 26, 29, 30, 31, 47, 71}) {
        auto alg = EtaleAlgebra::make({Int(d), 0, 1});
        const auto& cl = class_group(alg);
        EXPECT_EQ(cl.order, form_class_number(field_discriminant(d))) << d;
        EXPECT_EQ(cl.order, product_of(cl.invariants)) << d;
        EXPECT_TRUE(cl.certified) << d;
    }
}

TEST(ClassGroup, Structure) {
    auto inv = [](long d) { return class_group(EtaleAlgebra::make({Int(d), 0, 1})).invariants; };
    EXPECT_EQ(inv(21), (std::vector<Int>{2, 2}));
    EXPECT_EQ(inv(30), (std::vector<Int>{2, 2}));
    EXPECT_EQ(inv(14), (std::vector<Int>{4}));
    EXPECT_EQ(inv(26), (std::vector<Int>{6}));
}

TEST(ClassGroup, RealQuadratic) {
    struct Case {
        long d;
        long h;
        double reg;
    };
    for (const auto& c : {Case{2, 1, std::log(1 + std::sqrt(2.0))}, Case{10, 2, std::log(3 + std::sqrt(10.0))},
                          Case{79, 3, std::log(80 + 9 * std::sqrt(79.0))}}) {
        auto alg = EtaleAlgebra::make({Int(-c.d), 0, 1});
        EXPECT_EQ(class_group(alg).order, c.h) << c.d;
        const auto& u = unit_group(alg);
        ASSERT_EQ(u.parts.size(), 1u);
        ASSERT_EQ(u.parts[0].fundamental.size(), 1u);
        const auto& eps = u.parts[0].fundamental[0];
        EXPECT_EQ(abs(alg->norm(eps)), 1);
        EXPECT_NEAR(regulator(alg, eps), c.reg, 1e-9) << c.d;
        EXPECT_EQ(u.parts[0].torsion_order, 2);
        EXPECT_FALSE(u.certified);
        EXPECT_GE(u.parts[0].saturated_below, 2u);
    }
}

TEST(ClassGroup, Roots) {
    EXPECT_EQ(unit_group(EtaleAlgebra::parse("1,0,1")).parts[0].torsion_order, 4);
    EXPECT_EQ(unit_group(EtaleAlgebra::parse("1,1,1")).parts[0].torsion_order, 6);
    EXPECT_EQ(unit_group(EtaleAlgebra::parse("5,0,1")).parts[0].torsion_order, 2);
    // Q(zeta_5): x^4 + x^3 + x^2 + x + 1, 10 roots of unity, unit rank 1.
    const auto& u = unit_group(EtaleAlgebra::parse("1,1,1,1,1"));
    EXPECT_EQ(u.parts[0].torsion_order, 10);
    EXPECT_EQ(u.parts[0].fundamental.size(), 1u);
}

TEST(ClassGroup, ExampleAlgebra) {
    // (x^2 - 5x + 16)(x^4 - x^3 - 15x^2 - 16x + 256).
    auto alg = EtaleAlgebra::parse("4096,-1536,96,43,6,-6,1");
    const auto& cl = class_group(alg);
    EXPECT_EQ(cl.invariants, (std::vector<Int>{4}));
    EXPECT_TRUE(cl.certified);
    const auto& u = unit_group(alg);
    ASSERT_EQ(u.parts.size(), 2u);
    std::size_t rank = 0;
    for (const auto& p : u.parts) rank += p.fundamental.size();
    EXPECT_EQ(rank, 1u);
    for (const auto& p : u.parts)
        for (const auto& x : p.fundamental) EXPECT_EQ(abs(alg->norm(x)), 1);
}

TEST(ClassGroup, GeneratorsCoprimeToModulus) {
    auto alg = EtaleAlgebra::parse("4096,-1536,96,43,6,-6,1");
    const Order s = Order::equation_order(alg);
    const Order ok = maximal_order(alg);
    auto gens = class_generators_coprime(alg, s.conductor());
    ASSERT_EQ(gens.size(), 1u);
    const auto& g = gens[0];
    EXPECT_EQ(g.order, 4);
    EXPECT_EQ(sum(g.ideal, s.conductor()), ok.lattice());
    EXPECT_EQ(power(g.ideal, 4), ok.lattice().scaled(g.power_generator));
    EXPECT_NE(principal_maximal(power(g.ideal, 2)).status, Principality::yes);
}

TEST(ClassGroup, Valuations) {
    auto alg = EtaleAlgebra::parse("1,0,1");
    const Order ok = maximal_order(alg);
    const auto& p2 = ok.primes_above(2);
    ASSERT_EQ(p2.size(), 1u);
    EXPECT_EQ(valuation(AlgElement{Rat(2), Rat(0)}, p2[0]), 2);
    EXPECT_EQ(valuation(AlgElement{Rat(1, 2), Rat(0)}, p2[0]), -2);
    const auto& p5 = ok.primes_above(5);
    ASSERT_EQ(p5.size(), 2u);
    AlgElement x{Rat(2), Rat(1)};
    EXPECT_EQ(valuation(x, p5[0]) + valuation(x, p5[1]), 1);
    EXPECT_EQ(valuation(AlgElement{Rat(5), Rat(0)}, p5[0]), 1);
}
