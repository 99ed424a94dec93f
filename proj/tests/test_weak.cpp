#include "cmorder/config.hpp"
#include "cmorder/overorder.hpp"
#include "cmorder/weak.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cmorder;

namespace {

Order z_plus_p(const AlgebraPtr& alg, long p) {
    return Order::from_lattice(oracle::z_plus(maximal_order(alg).lattice(), p));
}

bool weak_by_primes(const FracIdeal& i, const FracIdeal& j, const Order& t) {
    for (const auto& p : t.noninvertible_primes())
        if (!locally_isomorphic_at(i, j, p)) return false;
    return true;
}

}  // namespace

TEST(Weak, BasicRelations) {
    auto alg = EtaleAlgebra::parse("-2,-1,0,1");
    auto s = Order::equation_order(alg);
    std::mt19937_64 rng(2);
    auto I = product(oracle::random_lattice(rng, alg), s.lattice());
    I = product(I, s.lattice());
    AlgElement x{3, -1, 2};
    EXPECT_TRUE(weak_equivalent(I, I.scaled(x)));
    EXPECT_TRUE(weak_equivalent(s.lattice(), trace_dual(s.lattice())));

    auto t = z_plus_p(alg, 2);
    EXPECT_FALSE(weak_equivalent(t.lattice(), trace_dual(t.lattice())));
    auto ex = weak_classes_with_multring(t, t);
    auto sc = weak_classes_type2_shortcut(t, t);
    ASSERT_EQ(ex.reps.size(), 2u);
    ASSERT_EQ(sc.reps.size(), 2u);
    EXPECT_FALSE(weak_equivalent(sc.reps[0], sc.reps[1]));
    int hits_t = 0, hits_dual = 0;
    for (const auto& r : ex.reps) {
        hits_t += weak_equivalent(r, t.lattice());
        hits_dual += weak_equivalent(r, trace_dual(t.lattice()));
    }
    EXPECT_EQ(hits_t, 1);
    EXPECT_EQ(hits_dual, 1);
}

TEST(Weak, ShortcutAgreesWithEnumeration) {
    set_verification_mode(true);
    std::mt19937_64 rng(17);
    int type2 = 0, orders = 0;
    for (int k = 0; k < 30 && orders < 60; ++k) {
        auto f = oracle::random_polynomial(rng, 3 + k % 2, 4);
        auto alg = EtaleAlgebra::make(oracle::scale_root(f, 2 + k % 2));
        auto s = Order::equation_order(alg);
        if (s.index_in_maximal() > 3000) continue;
        auto lat = overorders(s);
        for (const auto& t : lat.members) {
            ++orders;
            auto prof = global_type(t);
            auto ex = weak_classes_with_multring(s, t);
            EXPECT_EQ(ex.reps.size() == 1, prof.global_type == 1) << alg->poly_string();
            for (const auto& r : ex.reps) EXPECT_EQ(colon(r, r), t.lattice());
            for (std::size_t a = 0; a < ex.reps.size(); ++a)
                for (std::size_t b = 0; b < ex.reps.size(); ++b) {
                    EXPECT_EQ(weak_equivalent(ex.reps[a], ex.reps[b]), a == b);
                    EXPECT_EQ(weak_by_primes(ex.reps[a], ex.reps[b], t), a == b);
                }
            if (prof.global_type > 2) continue;
            auto sc = weak_classes_type2_shortcut(s, t);
            std::size_t n2 = 0;
            for (const auto& pt : prof.primes) n2 += pt.type == 2;
            EXPECT_EQ(sc.reps.size(), std::size_t(1) << n2);
            ASSERT_EQ(sc.reps.size(), ex.reps.size()) << alg->poly_string();
            for (const auto& r : sc.reps) {
                int matches = 0;
                for (const auto& e : ex.reps) matches += weak_equivalent(r, e);
                EXPECT_EQ(matches, 1);
            }
            if (prof.global_type == 2) {
                ++type2;
                FracIdeal dual = trace_dual(t.lattice());
                for (const auto& r : ex.reps)
                    for (const auto& pt : prof.primes)
                        EXPECT_TRUE(locally_isomorphic_at(r, t.lattice(), pt.prime) ||
                                    locally_isomorphic_at(r, dual, pt.prime));
            }
        }
    }
    set_verification_mode(false);
    EXPECT_GT(type2, 0);
}

TEST(Weak, QuadraticOrdersAreBass) {
    auto alg = EtaleAlgebra::parse("9,0,1");
    auto s = Order::equation_order(alg);
    for (const auto& t : overorders(s).members) EXPECT_EQ(weak_classes(s, t).reps.size(), 1u);
}

TEST(Weak, TypeThreeOrder) {
    auto alg = EtaleAlgebra::parse("1,1,1,1,1");
    auto t = z_plus_p(alg, 2);
    EXPECT_EQ(global_type(t).global_type, 3u);
    EXPECT_THROW(weak_classes_type2_shortcut(t, t), MathError);
    auto w = weak_classes(t, t);
    EXPECT_GT(w.reps.size(), 2u);
}
