#include "cmorder/residue_units.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace cmorder;

namespace {

// All of A/g by brute force: units, and for each k the number of units
// with u^k = 1.
struct Census {
    std::size_t units = 0;
    std::map<std::size_t, std::size_t> killed;
};

Census brute_census(const Order& a, const FracIdeal& g) {
    FiniteQuotient q(a.lattice(), g);
    const auto& alg = *a.algebra();
    std::vector<std::vector<Int>> elems;
    std::vector<Int> c(q.rank(), 0);
    for (;;) {
        elems.push_back(c);
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == q.divisors()[i]) c[i++] = 0;
        if (i == c.size()) break;
    }
    auto one = q.coords(alg.one());
    std::vector<AlgElement> lifts;
    for (const auto& e : elems) lifts.push_back(q.lift(e));
    std::vector<std::size_t> units;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (q.coords(alg.mul(lifts[i], lifts[j])) == one) {
                units.push_back(i);
                break;
            }
    Census out;
    out.units = units.size();
    for (std::size_t k = 1; k <= units.size(); ++k) {
        if (units.size() % k) continue;
        std::size_t cnt = 0;
        for (auto i : units) {
            AlgElement x = alg.one();
            for (std::size_t t = 0; t < k; ++t) x = alg.mul(x, lifts[i]);
            cnt += q.coords(x) == one;
        }
        out.killed[k] = cnt;
    }
    return out;
}

void check_group(const Order& a, const FracIdeal& g) {
    ResidueUnitGroup grp(a, g);
    Census c = brute_census(a, g);
    ASSERT_EQ(grp.order(), Int(static_cast<unsigned long>(c.units)));
    auto inv = grp.invariants();
    for (const auto& [k, cnt] : c.killed) {
        Int expect = 1;
        for (const auto& d : inv) expect *= gcd(Int(static_cast<unsigned long>(k)), d);
        EXPECT_EQ(expect, Int(static_cast<unsigned long>(cnt))) << "k = " << k;
    }
    // dlog reproduces the element, for every generator product we try.
    const auto& gens = grp.generators();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        AlgElement x = a.algebra()->one();
        for (const auto& gn : gens) x = grp.mul(x, grp.pow(gn, Int(static_cast<unsigned long>(rng() % 17))));
        ZVec e = grp.dlog(x);
        AlgElement y = a.algebra()->one();
        for (std::size_t i = 0; i < gens.size(); ++i) y = grp.mul(y, grp.pow(gens[i], mod_nonneg(e[i], grp.order())));
        EXPECT_EQ(grp.reduce(x), grp.reduce(y));
    }
}

}  // namespace

TEST(ResidueUnits, GaussianModuli) {
    auto alg = EtaleAlgebra::parse("1,0,1");
    auto ok = maximal_order(alg);
    for (long m : {2, 3, 4, 5, 6, 8, 9, 12}) check_group(ok, ok.lattice().scaled(Rat(m)));
    // (1+i)^3
    auto p = ok.primes_above(2).front().ideal();
    check_group(ok, power(p, 3));
}

TEST(ResidueUnits, NonMaximalOrder) {
    auto alg = EtaleAlgebra::parse("9,0,1");  // Z[3i]
    auto s = Order::equation_order(alg);
    check_group(s, s.conductor());
    check_group(s, s.lattice().scaled(Rat(6)));
    auto ok = s.maximal_order();
    check_group(ok, s.conductor());
}

TEST(ResidueUnits, CubicAndQuartic) {
    auto cubic = maximal_order(EtaleAlgebra::parse("-2,-1,0,1"));
    for (long m : {2, 3, 4, 6}) check_group(cubic, cubic.lattice().scaled(Rat(m)));
    auto quartic = EtaleAlgebra::parse("4,0,-1,0,1");
    auto s = Order::equation_order(quartic);
    check_group(s, s.conductor());
    check_group(s.maximal_order(), s.conductor());
    // Split algebra Q x Q.
    auto split = maximal_order(EtaleAlgebra::parse("-1,0,1"));
    check_group(split, split.lattice().scaled(Rat(12)));
}

TEST(ResidueUnits, RejectsNonUnits) {
    auto ok = maximal_order(EtaleAlgebra::parse("1,0,1"));
    ResidueUnitGroup grp(ok, ok.lattice().scaled(Rat(5)));
    EXPECT_THROW(grp.dlog(AlgElement{Rat(2), Rat(1)}), MathError);  // 2+i lies over 5
    EXPECT_NO_THROW(grp.dlog(AlgElement{Rat(1), Rat(1)}));
}
