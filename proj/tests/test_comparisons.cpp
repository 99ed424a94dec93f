#include "cmorder/comparisons.hpp"

#include "cmorder/cmtype.hpp"
#include "cmorder/factor.hpp"
#include "cmorder/overorder.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cmorder;

namespace {

Order eq(const std::string& f) { return Order::equation_order(EtaleAlgebra::parse(f)); }

std::vector<PrimeIdeal> index_primes(const Order& s) {
    std::vector<PrimeIdeal> out;
    for (const auto& q : prime_divisors(s.index_in_maximal()))
        for (const auto& p : s.primes_above(q)) out.push_back(p);
    return out;
}

}  // namespace

TEST(Comparisons, TraceIdealOfGorensteinOrders) {
    for (const char* f : {"5,0,1", "4,0,1", "-2,-1,0,1", "8,0,0,1", "4096,-1536,96,43,6,-6,1"}) {
        const Order s = eq(f);
        EXPECT_EQ(trace_ideal(s), s.lattice()) << f;
        const Order ok = maximal_order(s.algebra());
        EXPECT_EQ(trace_ideal(ok), ok.lattice()) << f;
    }
}

TEST(Comparisons, TraceIdealOfZPlusTwoOk) {
    auto alg = EtaleAlgebra::parse("-2,-1,0,1");
    const Order ok = maximal_order(alg);
    const Order t = Order::from_lattice(oracle::z_plus(ok.lattice(), 2));
    FracIdeal tr = trace_ideal(t);
    EXPECT_NE(tr, t.lattice());
    EXPECT_TRUE(t.lattice().contains(tr));
    EXPECT_TRUE(tr.contains(t.conductor()));
    // Z + 2 O_K is local with maximal ideal 2 O_K = f.
    for (const auto& p : index_primes(t)) {
        EXPECT_TRUE(is_nearly_gorenstein_at(t, p));
        auto r = is_almost_gorenstein_at(t, p);
        EXPECT_EQ(r.type, 2u);
        EXPECT_EQ(r.maximal_over_order, 2u);
        EXPECT_EQ(r.order_over_conductor, 1u);
        EXPECT_TRUE(r.almost_gorenstein);
    }
}

TEST(Comparisons, LengthBasics) {
    const Order s = eq("4096,-1536,96,43,6,-6,1");
    const Order ok = maximal_order(s.algebra());
    for (const auto& p : index_primes(s)) {
        EXPECT_EQ(length_at_prime(s.lattice(), s.lattice(), p), 0u);
        EXPECT_EQ(length_at_prime(s.lattice(), p.ideal(), p), 1u);
        // Additivity along O_K ⊇ S ⊇ f.
        EXPECT_EQ(length_at_prime(ok.lattice(), s.conductor(), p),
                  length_at_prime(ok.lattice(), s.lattice(), p) + length_at_prime(s.lattice(), s.conductor(), p));
    }
    EXPECT_THROW(length_at_prime(s.conductor(), s.lattice(), index_primes(s)[0]), MathError);
}

TEST(Comparisons, LengthsSumToIndex) {
    // Sum over primes above p of f_p * l_p(A/B) = v_p([A:B]).
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto alg = EtaleAlgebra::make(oracle::scale_root(oracle::random_polynomial(rng, 3), 2 + trial % 3));
        const Order s = Order::equation_order(alg);
        FracIdeal b = oracle::random_ideal(rng, s.lattice());
        FracIdeal a = s.lattice();
        b = intersect(b, a);
        Rat idx = index(a, b);
        for (const auto& q : prime_divisors(idx.get_num())) {
            unsigned total = 0;
            for (const auto& p : s.primes_above(q)) total += p.residue_degree() * length_at_prime(a, b, p);
            Int n = idx.get_num();
            unsigned v = 0;
            while (n % q == 0) n /= q, ++v;
            EXPECT_EQ(total, v);
        }
    }
}

TEST(Comparisons, GorensteinNonMaximal) {
    // Z[2i]: l(O_K/S) = l(S/f) = 1 at the prime above 2, type 1.
    const Order s = eq("4,0,1");
    auto reps = comparison_report(s);
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0].maximal_over_order, 1u);
    EXPECT_EQ(reps[0].order_over_conductor, 1u);
    EXPECT_EQ(reps[0].type, 1u);
    EXPECT_TRUE(reps[0].almost_gorenstein);
    EXPECT_TRUE(reps[0].nearly_gorenstein);
    // A maximal order: empty report.
    EXPECT_TRUE(comparison_report(eq("5,0,1")).empty());
}

TEST(Comparisons, Sweep) {
    std::size_t orders = 0, not_nearly = 0, almost_non_gor = 0, nearly_non_gor = 0;
    for (const auto& base : oracle::comparison_corpus()) {
        auto lat = overorders(base);
        if (lat.members.size() > 150) continue;
        for (const auto& t : lat.members) {
            ++orders;
            const bool gor = is_gorenstein(t);
            EXPECT_EQ(trace_ideal(t) == t.lattice(), gor);
            FracIdeal tr = trace_ideal(t);
            FracIdeal st = trace_dual(t.lattice());
            for (const auto& p : index_primes(t)) {
                auto r = is_almost_gorenstein_at(t, p);
                EXPECT_EQ(r.type, type_at_prime(t, p));
                // Direct form of p ⊆ tr locally.
                EXPECT_EQ(r.nearly_gorenstein, length_at_prime(sum(tr, p.ideal()), tr, p) == 0);
                if (r.almost_gorenstein) EXPECT_TRUE(r.nearly_gorenstein);
                if (!r.nearly_gorenstein) ++not_nearly;
                if (r.type > 1 && r.almost_gorenstein) ++almost_non_gor;
                if (r.type > 1 && r.nearly_gorenstein) {
                    ++nearly_non_gor;
                    EXPECT_TRUE(locally_equal(multiplicator_ring(p.ideal()).lattice(),
                                              multiplicator_ring(colon(t.lattice(), st)).lattice(), p));
                    EXPECT_EQ(nearly_gorenstein_type(t, p), r.type);
                }
            }
        }
    }
    EXPECT_GT(orders, 100u);
    EXPECT_GT(not_nearly, 0u);
    EXPECT_GT(almost_non_gor, 0u);
    EXPECT_GT(nearly_non_gor, 0u);
}
