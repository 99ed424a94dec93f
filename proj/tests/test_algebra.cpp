#include "cmorder/algebra.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cmorder;

namespace {

QVec random_element(std::mt19937_64& rng, std::size_t n) {
    QVec v(n);
    for (auto& x : v) {
        x = Rat(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
        x.canonicalize();
    }
    return v;
}

// Schoolbook polynomial product followed by long division by f: an oracle
// independent of the reduction table.
QVec naive_mul(const std::vector<Int>& f, const QVec& a, const QVec& b) {
    std::size_t n = f.size() - 1;
    std::vector<Rat> p(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p[i + j] += a[i] * b[j];
    for (std::size_t k = 2 * n - 1; k >= n; --k) {
        Rat c = p[k];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= n; ++i) p[k - n + i] -= c * f[i];
    }
    p.resize(n);
    return p;
}

}  // namespace

TEST(Algebra, Construction) {
    auto q = EtaleAlgebra::parse("-1,1");
    EXPECT_EQ(q->degree(), 1u);
    EXPECT_EQ(q->trace(q->one()), 1);
    auto k = EtaleAlgebra::parse("5,0,1");
    EXPECT_EQ(k->degree(), 2u);
    EXPECT_EQ(k->trace(k->gen()), 0);
    EXPECT_EQ(k->power_traces()[2], -10);
    EXPECT_NO_THROW(EtaleAlgebra::parse("-1,0,1"));
    EXPECT_THROW(EtaleAlgebra::parse("1,2,1"), MathError);   // (x+1)^2
    EXPECT_THROW(EtaleAlgebra::parse("1,2,2"), MathError);   // not monic
    EXPECT_THROW(EtaleAlgebra::parse("1"), MathError);
    EXPECT_THROW(EtaleAlgebra::parse("1,x,1"), MathError);
}

TEST(Algebra, Multiplication) {
    auto k = EtaleAlgebra::parse("5,0,1");
    QVec a{Rat(3), Rat(-2, 7)};
    EXPECT_EQ(k->mul(k->one(), a), a);
    EXPECT_EQ(k->mul(k->gen(), k->gen()), (QVec{Rat(-5), Rat(0)}));
    auto s = EtaleAlgebra::parse("-1,0,1");
    EXPECT_EQ(s->mul(QVec{Rat(1), Rat(1)}, QVec{Rat(1), Rat(-1)}), (QVec{Rat(0), Rat(0)}));
    EXPECT_TRUE(s->is_zero_divisor(QVec{Rat(1), Rat(1)}));
}

TEST(Algebra, RandomCrossChecks) {
    std::mt19937_64 rng(1);
    const char* polys[] = {"5,0,1", "-2,0,0,1", "3,1,-4,0,1",
                           "4096,-1536,96,43,6,-6,1", "1,-1,1,-1,1", "-7,2,0,1,0,1"};
    for (auto* p : polys) {
        auto k = EtaleAlgebra::parse(p);
        std::size_t n = k->degree();
        for (int t = 0; t < 30; ++t) {
            auto a = random_element(rng, n), b = random_element(rng, n);
            auto ab = k->mul(a, b);
            EXPECT_EQ(ab, naive_mul(k->poly(), a, b));
            // Row convention: coords(a*b) = b-coords times regular_rep(a).
            auto r = k->regular_rep(a);
            QVec viaRep(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) viaRep[j] += b[i] * r(i, j);
            EXPECT_EQ(viaRep, ab);
            Rat trr = 0;
            for (std::size_t i = 0; i < n; ++i) trr += r(i, i);
            EXPECT_EQ(trr, k->trace(a));
            Rat lam(static_cast<long>(rng() % 9) - 4, 3);
            lam.canonicalize();
            QVec comb(n);
            for (std::size_t i = 0; i < n; ++i) comb[i] = a[i] + lam * b[i];
            EXPECT_EQ(k->trace(comb), k->trace(a) + lam * k->trace(b));
            EXPECT_EQ(k->norm(ab), k->norm(a) * k->norm(b));
            if (!k->is_zero_divisor(a)) {
                auto inv = k->inverse(a);
                ASSERT_TRUE(inv);
                EXPECT_EQ(k->mul(*inv, a), k->one());
            }
            auto cp = k->charpoly(a);
            // Cayley-Hamilton.
            QVec acc(n), pw = k->one();
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t j = 0; j < n; ++j) acc[j] += cp[i] * pw[j];
                pw = k->mul(pw, a);
            }
            EXPECT_EQ(acc, QVec(n, Rat(0)));
        }
    }
}

TEST(Algebra, DiscriminantMatchesResultant) {
    const char* polys[] = {"5,0,1", "-2,0,0,1", "3,1,-4,0,1", "4096,-1536,96,43,6,-6,1", "-1,1",
                           "1,1,1,1,1,1"};
    for (auto* p : polys) {
        auto k = EtaleAlgebra::parse(p);
        std::size_t n = k->degree();
        Int res = resultant(k->poly(), poly_derivative(k->poly()));
        Int sign = ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1;
        EXPECT_EQ(k->discriminant(), sign * res) << p;
        // Traces against the regular representation of pi^k.
        for (std::size_t e = 0; e <= 2 * n - 2; ++e) {
            auto r = k->regular_rep(k->pow(k->gen(), static_cast<unsigned>(e)));
            Rat t = 0;
            for (std::size_t i = 0; i < n; ++i) t += r(i, i);
            EXPECT_EQ(t, k->power_traces()[e]);
        }
    }
    auto ex = EtaleAlgebra::parse("4096,-1536,96,43,6,-6,1");
    EXPECT_EQ(ex->discriminant(), Int("-2794767511584138854400"));
}

TEST(Algebra, ComplexRoots) {
    auto k = EtaleAlgebra::parse("1,0,1");
    auto r = k->complex_roots(128);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[0].z.re.to_d(), 0.0, 1e-30);
    EXPECT_NEAR(r[0].z.im.to_d(), -1.0, 1e-30);
    EXPECT_NEAR(r[1].z.im.to_d(), 1.0, 1e-30);
    EXPECT_FALSE(r[0].real);
    auto s = EtaleAlgebra::parse("-2,0,1");
    auto rs = s->complex_roots(128);
    EXPECT_TRUE(rs[0].real && rs[1].real);
    EXPECT_NEAR(rs[1].z.re.to_d(), 1.4142135623730951, 1e-15);
    EXPECT_NEAR(rs[0].z.re.to_d(), -1.4142135623730951, 1e-15);
    EXPECT_EQ(s->signature(), (std::pair<std::size_t, std::size_t>{2, 0}));
    EXPECT_THROW(s->complex_roots(32), RootError);
}

TEST(Algebra, VietaChecks) {
    const char* polys[] = {"4096,-1536,96,43,6,-6,1", "3,1,-4,0,1", "-7,2,0,1,0,1", "1,-1,1,-1,1"};
    for (auto* p : polys) {
        auto k = EtaleAlgebra::parse(p);
        auto r = k->complex_roots(128);
        std::size_t n = k->degree();
        Complex sum(128), prod(Real(1.0, 128), Real(128));
        for (auto& x : r) {
            sum += x.z;
            prod = prod * x.z;
            EXPECT_LT(x.radius.to_d(), 1e-19);
        }
        EXPECT_NEAR(sum.re.to_d(), -k->poly()[n - 1].get_d(), 1e-15);
        EXPECT_NEAR(sum.im.to_d(), 0.0, 1e-15);
        double f0 = std::fabs(k->poly()[0].get_d());
        EXPECT_NEAR(prod.modulus().to_d() / f0, 1.0, std::ldexp(1.0, -64));
        for (std::size_t i = 0; i + 1 < r.size(); ++i) EXPECT_FALSE(r[i + 1].z.re < r[i].z.re);
    }
    auto ex = EtaleAlgebra::parse("4096,-1536,96,43,6,-6,1");
    EXPECT_EQ(ex->signature(), (std::pair<std::size_t, std::size_t>{0, 3}));
}
