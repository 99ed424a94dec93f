#include "cmorder/cmtype.hpp"
#include "cmorder/config.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cmorder;

namespace {

const char* kExample = "4096,-1536,96,43,6,-6,1";

// Z + p O_K.
Order z_plus_p(const AlgebraPtr& alg, long p) {
    return Order::from_lattice(oracle::z_plus(maximal_order(alg).lattice(), p));
}

struct VerifyScope {
    VerifyScope() { set_verification_mode(true); }
    ~VerifyScope() { set_verification_mode(false); }
};

}  // namespace

TEST(CmType, MonogenicOrdersAreGorenstein) {
    VerifyScope v;
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        auto alg = EtaleAlgebra::make(oracle::random_polynomial(rng, 2 + t % 4, 6));
        auto s = Order::equation_order(alg);
        auto prof = global_type(s);
        EXPECT_EQ(prof.global_type, 1u) << alg->poly_string();
        for (const auto& pt : prof.primes) EXPECT_EQ(pt.type, 1u);
        EXPECT_TRUE(is_gorenstein(s));
    }
}

TEST(CmType, ZPlusPOkHasTypeNMinusOne) {
    VerifyScope v;
    for (const char* f : {"-2,-1,0,1", "1,1,1,1,1", "3,0,1", "-5,2,-3,0,1", "7,1,0,0,0,1"}) {
        auto alg = EtaleAlgebra::parse(f);
        const unsigned n = static_cast<unsigned>(alg->degree());
        for (long p : {2L, 3L}) {
            auto t = z_plus_p(alg, p);
            auto prof = global_type(t);
            EXPECT_EQ(prof.global_type, n - 1) << f << " p=" << p;
            EXPECT_EQ(is_gorenstein(t), n == 2) << f;
        }
    }
}

TEST(CmType, ExampleInvariants) {
    VerifyScope v;
    auto alg = EtaleAlgebra::parse(kExample);
    auto s = Order::equation_order(alg);
    auto prof = global_type(s);
    EXPECT_EQ(prof.global_type, 1u);
    ASSERT_EQ(prof.primes.size(), 3u);
    auto g = g_of_order(s);
    EXPECT_EQ(g.value, 3u);
    EXPECT_FALSE(g.conditional);
    EXPECT_FALSE(is_bass(s));
    EXPECT_EQ(quotient_gens_count(s) + 1, g.value);
    EXPECT_EQ(gens_count_module(maximal_order(alg).lattice(), s).value, 3u);
    std::vector<unsigned> special;
    for (const auto& pt : prof.primes) special.push_back(special_overorder_type(s, pt.prime));
    EXPECT_EQ(special, (std::vector<unsigned>{2, 2, 1}));
}

TEST(CmType, QuadraticOrders) {
    VerifyScope v;
    auto alg = EtaleAlgebra::parse("4,0,1");
    auto s = Order::equation_order(alg);
    EXPECT_EQ(g_of_order(s).value, 2u);
    EXPECT_TRUE(is_bass(s));
    EXPECT_TRUE(is_gorenstein(s));
    const auto& ps = s.noninvertible_primes();
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(special_overorder_type(s, ps[0]), 1u);
    EXPECT_FALSE(is_invertible_ideal(ps[0].ideal(), s));
    EXPECT_TRUE(is_invertible_ideal(s.lattice().scaled(alg->gen()), s));
    EXPECT_EQ(gens_count_module(ps[0].ideal(), s).value, 2u);
    EXPECT_EQ(gens_count_module(s.lattice(), s).value, 1u);

    auto k = EtaleAlgebra::parse("5,0,1");
    auto o = Order::equation_order(k);
    auto p2 = ideal_from_generators(k, {AlgElement{2, 0}, AlgElement{1, 1}}, &o.lattice());
    EXPECT_TRUE(is_invertible_ideal(p2, o));
    EXPECT_EQ(gens_count_module(p2, o).value, 2u);
    EXPECT_EQ(g_of_order(o).value, 2u);
    EXPECT_TRUE(g_of_order(o).conditional);
    EXPECT_EQ(g_of_order(o, false).value, 2u);
    EXPECT_THROW(type_at_prime(o, Order::equation_order(alg).noninvertible_primes()[0]), MathError);
}

TEST(CmType, TypeBoundOnRandomOrders) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        auto alg = EtaleAlgebra::make(oracle::random_polynomial(rng, 3 + t % 3, 5));
        auto ok = maximal_order(alg).lattice();
        auto lat = oracle::z_plus(ok, 2 + t % 3);
        auto s = Order::from_lattice(sum(lat, Order::equation_order(alg).lattice()));
        EXPECT_LE(global_type(s).global_type, alg->degree() - 1);
    }
}
