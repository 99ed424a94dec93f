#include "cmorder/factor.hpp"
#include "cmorder/finite_algebra.hpp"

#include <gtest/gtest.h>

using namespace cmorder;

namespace {

// F_p[x]/(g) for monic g, basis 1, x, ..., x^(n-1).
FpAlgebra monogenic(std::uint64_t p, const std::vector<std::uint64_t>& g) {
    PrimeField k(p);
    const std::size_t n = g.size() - 1;
    auto reduce = [&](std::vector<std::uint64_t> v) {
        for (std::size_t d = v.size(); d-- > n;) {
            auto c = v[d];
            if (c == 0) continue;
            for (std::size_t i = 0; i <= n; ++i) v[d - n + i] = k.sub(v[d - n + i], k.mul(c, g[i]));
        }
        v.resize(n);
        return v;
    };
    std::vector<std::vector<FpVec>> table(n, std::vector<FpVec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::uint64_t> v(2 * n, 0);
            v[i + j] = 1;
            table[i][j] = reduce(v);
        }
    FpVec one(n, 0);
    one[0] = 1;
    return FpAlgebra(p, n, table, one);
}

}  // namespace

TEST(Factor, SmallAndExampleDiscriminant) {
    auto f = factor(Int(360));
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0], std::make_pair(Int(2), 3u));
    EXPECT_EQ(f[1], std::make_pair(Int(3), 2u));
    EXPECT_EQ(f[2], std::make_pair(Int(5), 1u));

    Int d("-2794767511584138854400");
    auto g = factor(d);
    Int back = 1;
    for (auto& [p, e] : g) {
        EXPECT_TRUE(is_probable_prime(p));
        for (unsigned i = 0; i < e; ++i) back *= p;
    }
    EXPECT_EQ(back, abs(d));
    EXPECT_EQ(g.front().first, 2);
}

TEST(Factor, RhoSplitsSemiprime) {
    Int p("1000000007"), q("998244353"), r("2305843009213693951");
    auto f = factor(p * q * r * r);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].first, q);
    EXPECT_EQ(f[1].first, p);
    EXPECT_EQ(f[2], std::make_pair(r, 2u));
    EXPECT_EQ(prime_divisors(Int(-84)), (std::vector<Int>{2, 3, 7}));
}

TEST(FiniteAlgebra, NilradicalOfDualNumbers) {
    for (std::uint64_t p : {2u, 3u, 7u}) {
        auto a = monogenic(p, {0, 0, 1});  // x^2
        auto n = nilradical(a);
        EXPECT_EQ(n.dim(), 1u);
        EXPECT_TRUE(n.contains({0, 1}));
        std::vector<std::size_t> keep;
        auto q = quotient_algebra(a, n, keep);
        EXPECT_EQ(q.dim(), 1u);
        EXPECT_EQ(keep, (std::vector<std::size_t>{0}));
    }
    // x^3 (x - 1) over F_2: nilpotent part of dimension 2.
    auto b = monogenic(2, {0, 0, 0, 1, 1});
    EXPECT_EQ(nilradical(b).dim(), 2u);
}

TEST(FiniteAlgebra, IdempotentsSplitComponents) {
    std::mt19937_64 rng(7);
    // x^2 + 1 over F_5 splits; over F_3 it is a field.
    auto a = monogenic(5, {1, 0, 1});
    auto es = primitive_idempotents(a, rng);
    ASSERT_EQ(es.size(), 2u);
    EXPECT_EQ(a.add(es[0], es[1]), a.one());
    EXPECT_TRUE(a.is_zero(a.mul(es[0], es[1])));
    for (auto& e : es) EXPECT_EQ(a.mul(e, e), e);
    EXPECT_EQ(primitive_idempotents(monogenic(3, {1, 0, 1}), rng).size(), 1u);

    // (x^2+1)(x+1)(x+2) over F_3 and over a large prime.
    for (std::uint64_t p : {3ull, 1000003ull}) {
        PrimeField k(p);
        // x^4 + 3x^3 + 3x^2 + 3x + 2
        auto b = monogenic(p, {2 % p, 3 % p, 3 % p, 3 % p, 1});
        auto fs = primitive_idempotents(b, rng);
        FpVec sum = b.zero();
        for (auto& e : fs) sum = b.add(sum, e);
        EXPECT_EQ(sum, b.one());
        // 1000003 = 3 mod 4, so x^2+1 stays irreducible there too.
        EXPECT_EQ(fs.size(), 3u) << p;
    }
}

TEST(FiniteAlgebra, SplitRootsAndMinimalPolynomial) {
    std::mt19937_64 rng(1);
    for (std::uint64_t p : {101ull, 1000000007ull}) {
        PrimeField k(p);
        // (x-2)(x-5)(x-11)
        std::vector<std::uint64_t> g{k.neg(110), 87, k.neg(18), 1};
        EXPECT_EQ(split_roots(g, k, rng), (std::vector<std::uint64_t>{2, 5, 11}));
    }
    auto a = monogenic(7, {1, 0, 0, 1});  // x^3 + 1
    auto m = minimal_polynomial(a, a.basis(1), a.one());
    EXPECT_EQ(m, (std::vector<std::uint64_t>{1, 0, 0, 1}));
    auto frob = a.frobenius();
    EXPECT_EQ(row_apply(a.basis(1), frob, a.field()), a.pow(a.basis(1), Int(7)));
}
