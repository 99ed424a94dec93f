#include "cmorder/picard.hpp"

#include "cmorder/overorder.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace cmorder;

namespace {

long form_class_number(long D) {
    long h = 0;
    for (long a = 1; 3 * a * a <= -D; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a || (c == a && b < 0)) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            ++h;
        }
    return h;
}

// Z[sqrt(-n)] has discriminant -4n = D_0 f^2: with n = m^2 s, s squarefree,
// D_0 = -s and f = 2m when s = 3 mod 4, else D_0 = -4s and f = m.
std::pair<long, long> split_discriminant(long n) {
    long m = 1;
    for (long k = 2; k * k <= n; ++k)
        while (n % (k * k) == 0) n /= k * k, m *= k;
    if (n % 4 == 3) return {-n, 2 * m};
    return {-4 * n, m};
}

// Bass orders: ICM is the union of the Picard groups of the overorders.
long quadratic_icm(long n) {
    auto [d0, f] = split_discriminant(n);
    long total = 0;
    for (long g = 1; g <= f; ++g)
        if (f % g == 0) total += form_class_number(d0 * g * g);
    return total;
}

Order eq(const std::string& f) { return Order::equation_order(EtaleAlgebra::parse(f)); }

}  // namespace

TEST(Picard, SmallExamples) {
    auto a = picard_group(eq("1,0,1"));
    EXPECT_EQ(a.size(), 1);
    EXPECT_TRUE(a.invariants().empty());
    EXPECT_TRUE(a.exact());
    auto b = picard_group(eq("5,0,1"));
    EXPECT_EQ(b.invariants(), (std::vector<Int>{2}));
    EXPECT_TRUE(b.exact());
    auto c = picard_group(eq("9,0,1"));
    EXPECT_EQ(c.invariants(), (std::vector<Int>{2}));
    EXPECT_TRUE(c.exact());
    EXPECT_EQ(c.certification(), "exact");
}

TEST(Picard, QuadraticOrdersMatchReducedForms) {
    for (long n = 1; n <= 60; ++n) {
        auto t = Order::equation_order(EtaleAlgebra::make({Int(n), 0, 1}));
        EXPECT_EQ(picard_group(t).size(), form_class_number(-4 * n)) << n;
    }
    // Z[(1 + sqrt(1 - 4n))/2].
    for (long n = 1; n <= 40; ++n) {
        auto t = Order::equation_order(EtaleAlgebra::make({Int(n), 1, 1}));
        EXPECT_EQ(picard_group(t).size(), form_class_number(1 - 4 * n)) << n;
    }
}

TEST(Picard, GeneratorsAndDiscreteLogs) {
    for (const char* f : {"5,0,1", "36,0,1", "80,0,1", "-2,-1,0,1", "-40,0,1", "15,-8,5,-2,1"}) {
        const Order t = eq(f);
        auto g = picard_group(t);
        Int prod = 1;
        for (const auto& d : g.invariants()) prod *= d;
        EXPECT_EQ(prod, g.size()) << f;
        for (const auto& l : g.generators()) {
            EXPECT_TRUE(is_invertible_ideal(l, t)) << f;
            EXPECT_TRUE(t.lattice().contains(l)) << f;
        }
        auto els = g.elements();
        ASSERT_EQ(Int(static_cast<unsigned long>(els.size())), g.size());
        std::set<FracIdeal> distinct(els.begin(), els.end());
        EXPECT_EQ(distinct.size(), els.size()) << f;
        for (std::size_t k = 0; k < els.size(); ++k) {
            ZVec c = g.dlog(els[k]);
            EXPECT_EQ(g.element(c), els[k]) << f;
            // The group law is ideal multiplication.
            const auto& other = els[(k * 7 + 3) % els.size()];
            ZVec d = g.dlog(other);
            ZVec s(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) s[i] = mod_nonneg(c[i] + d[i], g.invariants()[i]);
            EXPECT_EQ(g.dlog(product(els[k], other)), s) << f;
        }
    }
}

TEST(Picard, PrincipalClassIsTrivial) {
    const Order t = eq("20,0,1");
    auto g = picard_group(t);
    AlgElement x{Rat(3), Rat(1)};
    EXPECT_EQ(g.dlog(t.lattice().scaled(x)), ZVec(g.invariants().size(), 0));
}

TEST(Picard, NormalizeIn) {
    const Order t = eq("9,0,1");
    auto l = picard_group(t).generators()[0];
    auto big = l.scaled(Rat(7, 3));
    auto n = normalize_in(big, t);
    EXPECT_EQ(n, normalize_in(l, t));
    EXPECT_TRUE(t.lattice().contains(n));
    EXPECT_FALSE(t.lattice().contains(n.scaled(Rat(1, 2))));
    EXPECT_FALSE(t.lattice().contains(n.scaled(Rat(1, 3))));
}

TEST(Icm, QuadraticOrdersAreUnionsOfPicardGroups) {
    for (long n : {1, 3, 4, 5, 9, 12, 20, 36, 45, 48}) {
        auto d = icm(Order::equation_order(EtaleAlgebra::make({Int(n), 0, 1})));
        EXPECT_EQ(d.total, quadratic_icm(n)) << n;
        EXPECT_TRUE(d.exact);
    }
    EXPECT_EQ(icm(eq("9,0,1")).total, 3);
    EXPECT_EQ(icm(eq("1,0,1")).total, 1);
}

TEST(Icm, FreeActionAndPartition) {
    // x(x^2 + 20), x(x^2 + 45): unit rank 0, and some overorders have both
    // several weak classes and a nontrivial Picard group.
    for (const char* f : {"0,20,0,1", "0,45,0,1"}) {
        const Order s = eq(f);
        auto d = icm(s);
        EXPECT_TRUE(d.exact) << f;
        Int total = 0;
        bool interesting = false;
        for (const auto& part : d.parts) {
            total += part.count();
            if (part.weak.reps.size() > 1 && part.pic.size() > 1) interesting = true;
            auto reps = icm_representatives(part);
            for (const auto& r : reps) {
                EXPECT_EQ(multiplicator_ring(r), part.weak.order) << f;
                EXPECT_TRUE(part.weak.order.lattice().contains(r)) << f;
            }
            for (std::size_t i = 0; i < reps.size(); ++i) {
                EXPECT_EQ(isomorphic(reps[i], reps[i].scaled(Rat(5, 7))), Principality::yes);
                for (std::size_t j = i + 1; j < reps.size(); ++j)
                    EXPECT_EQ(isomorphic(reps[i], reps[j]), Principality::no) << f << " " << i << " " << j;
            }
        }
        EXPECT_EQ(total, d.total);
        EXPECT_TRUE(interesting) << f;
    }
}

TEST(Applications, MatrixClasses) {
    auto a = matrix_conjugacy_classes({5, 0, 1}, 1, 100);
    EXPECT_EQ(a.count, 2);
    EXPECT_EQ(a.matrices.size(), 2u);
    auto b = matrix_conjugacy_classes({9, 0, 1}, 1, 100);
    EXPECT_EQ(b.count, 3);
    ASSERT_EQ(b.matrices.size(), 3u);
    for (const auto& m : b.matrices) {
        // Trace 0, determinant 9.
        EXPECT_EQ(m(0, 0) + m(1, 1), 0);
        EXPECT_EQ(determinant(m), 9);
    }
    auto c = matrix_conjugacy_classes({36, 0, 1});
    EXPECT_EQ(c.count, quadratic_icm(36));
    EXPECT_TRUE(c.matrices.empty());
}

TEST(Applications, WeilOrder) {
    // q/pi = 5 - pi for x^2 - 5x + 16, so Z[pi, 16/pi] = Z[pi].
    auto alg = EtaleAlgebra::parse("16,-5,1");
    EXPECT_EQ(weil_order(alg, 16), Order::equation_order(alg));
    EXPECT_THROW(weil_order(alg, 3), MathError);
    auto d = av_isomorphism_classes({16, -5, 1}, 16);
    EXPECT_EQ(d.total, icm(Order::equation_order(alg)).total);
    // A maximal Z[pi, q/pi]: the count is the class number.
    auto m = av_isomorphism_classes({2, 1, 1}, 2);
    EXPECT_EQ(m.total, 1);
}

TEST(Applications, ExampleAbelianVarieties) {
    auto d = av_isomorphism_classes({4096, -1536, 96, 43, 6, -6, 1}, 16);
    EXPECT_EQ(d.total, 15112);
    EXPECT_EQ(d.parts.size(), 48u);
}
