#include "cmorder/residue_units.hpp"

#include "cmorder/config.hpp"

#include <cmath>
#include <map>

namespace cmorder {

namespace {

FpVec to_fp(const std::vector<Int>& c) {
    FpVec v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = mpz_get_ui(c[i].get_mpz_t());
    return v;
}

bool is_zero_vec(const FpVec& v) {
    for (auto x : v)
        if (x) return false;
    return true;
}

// e in `other` with e ≡ 1 mod p (other + p = A).
AlgElement idempotent_lift(const FracIdeal& other, const PrimeIdeal& p) {
    const auto& rq = p.residue().quotient;
    const PrimeField k(mpz_get_ui(p.p().get_mpz_t()));
    auto basis = other.basis_elements();
    const std::size_t f = rq.rank();
    FpVec one = to_fp(rq.coords(other.algebra()->one()));
    // Columns: residues of the basis, then -1.
    FpMatrix sys(f, FpVec(basis.size() + 1, 0));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto v = to_fp(rq.coords(basis[j]));
        for (std::size_t i = 0; i < f; ++i) sys[i][j] = v[i];
    }
    for (std::size_t i = 0; i < f; ++i) sys[i][basis.size()] = k.neg(one[i]);
    for (const auto& v : kernel(sys, basis.size() + 1, k)) {
        if (v.back() == 0) continue;
        auto s = k.inv(v.back());
        AlgElement e(other.degree(), Rat(0));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            auto c = k.mul(v[j], s);
            if (!c) continue;
            for (std::size_t t = 0; t < e.size(); ++t) e[t] += Rat(Int(static_cast<unsigned long>(c))) * basis[j][t];
        }
        return e;
    }
    throw MathError("ideals are not coprime");
}

}  // namespace

ResidueUnitGroup::ResidueUnitGroup(const Order& a, const FracIdeal& g) : a_(a), g_(g), quot_(a.lattice(), g) {
    const auto& alg = *a.algebra();
    const std::size_t n = a.degree();
    std::vector<PrimeIdeal> primes;
    for (const auto& p : prime_divisors(quot_.order()))
        for (const auto& pr : a.primes_above(p))
            if (pr.ideal().contains(g)) primes.push_back(pr);

    std::vector<Int> orders;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto& pr = primes[i];
        const FpAlgebra& fld = pr.residue().field;
        Int q = pr.residue_size();
        Residue r{pr, fld.one(), q - 1, prime_divisors(q - 1)};
        if (q > 2) {
            // Smallest primitive element in counting order.
            const std::size_t f = fld.dim();
            FpVec v(f, 0);
            for (;;) {
                std::size_t t = 0;
                while (t < f && ++v[t] == fld.p()) v[t++] = 0;
                if (t == f) throw MathError("residue field has no primitive element");
                bool prim = true;
                for (const auto& l : r.order_factors)
                    if (fld.pow(v, r.order / l) == fld.one()) {
                        prim = false;
                        break;
                    }
                if (prim && !is_zero_vec(v)) break;
            }
            r.generator = v;
            FracIdeal other = a.lattice();
            for (std::size_t j = 0; j < primes.size(); ++j)
                if (j != i) other = product(other, primes[j].ideal());
            AlgElement e = idempotent_lift(other, pr);
            std::vector<Int> c(v.begin(), v.end());
            AlgElement u = pr.residue().quotient.lift(c);
            AlgElement one = alg.one();
            AlgElement um1 = u;
            for (std::size_t t = 0; t < n; ++t) um1[t] -= one[t];
            AlgElement gam = alg.mul(um1, e);
            for (std::size_t t = 0; t < n; ++t) gam[t] += one[t];
            gens_.push_back(reduce(gam));
            orders.push_back(r.order);
        }
        residues_.push_back(std::move(r));
    }

    if (!primes.empty()) {
        FracIdeal j = primes[0].ideal();
        for (std::size_t i = 1; i < primes.size(); ++i) j = intersect(j, primes[i].ideal());
        FracIdeal cur = j;
        while (cur != g) {
            FracIdeal next = sum(product(cur, j), g);
            FiniteQuotient q(cur, next);
            for (std::size_t i = 0; i < q.rank(); ++i) {
                std::vector<Int> e(q.rank(), 0);
                e[i] = 1;
                AlgElement b = q.lift(e);
                AlgElement one = alg.one();
                for (std::size_t t = 0; t < n; ++t) b[t] += one[t];
                gens_.push_back(reduce(b));
                orders.push_back(q.divisors()[i]);
            }
            levels_.push_back(Level{std::move(q)});
            cur = std::move(next);
        }
    }
    for (const auto& o : orders) order_ *= o;
    for (const auto& x : gens_) gen_inverses_.push_back(pow(x, order_ - 1));

    const std::size_t m = gens_.size();
    rel_ = IntMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        ZVec d = dlog(pow(gens_[i], orders[i]));
        for (std::size_t j = 0; j < m; ++j) rel_(i, j) = -d[j];
        rel_(i, i) += orders[i];
    }
    if (verification_mode()) {
        Int det = 1;
        for (std::size_t i = 0; i < m; ++i) det *= rel_(i, i);
        verify_that(abs(determinant(rel_)) == order_ && det == order_, "unit group relations are triangular");
    }
}

std::vector<Int> ResidueUnitGroup::invariants() const {
    std::vector<Int> out;
    if (rel_.rows() == 0) return out;
    for (const auto& d : snf(rel_).divisors)
        if (d != 1) out.push_back(d);
    return out;
}

AlgElement ResidueUnitGroup::reduce(const AlgElement& x) const { return quot_.lift(quot_.coords(x)); }

AlgElement ResidueUnitGroup::mul(const AlgElement& x, const AlgElement& y) const {
    return reduce(a_.algebra()->mul(x, y));
}

AlgElement ResidueUnitGroup::pow(AlgElement x, Int e) const {
    AlgElement r = reduce(a_.algebra()->one());
    x = reduce(x);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, x);
        e >>= 1;
        if (e > 0) x = mul(x, x);
    }
    return r;
}

AlgElement ResidueUnitGroup::inverse(const AlgElement& x) const {
    if (!is_unit(x)) throw MathError("element is not a unit modulo the ideal");
    return pow(x, order_ - 1);
}

bool ResidueUnitGroup::is_unit(const AlgElement& x) const {
    if (!a_.lattice().contains(x)) return false;
    for (const auto& r : residues_)
        if (is_zero_vec(to_fp(r.prime.residue().quotient.coords(x)))) return false;
    return true;
}

std::uint64_t ResidueUnitGroup::residue_dlog(const Residue& r, const FpVec& x) const {
    const FpAlgebra& fld = r.prime.residue().field;
    const std::uint64_t n = r.order.get_ui();
    const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::map<FpVec, std::uint64_t> baby;
    FpVec cur = fld.one();
    for (std::uint64_t j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = fld.mul(cur, r.generator);
    }
    FpVec step = fld.pow(r.generator, r.order - Int(static_cast<unsigned long>(m % n)));  // g^-m
    FpVec y = x;
    for (std::uint64_t i = 0; i <= m; ++i) {
        auto it = baby.find(y);
        if (it != baby.end()) return (i * m + it->second) % n;
        y = fld.mul(y, step);
    }
    throw MathError("discrete logarithm failed in a residue field");
}

ZVec ResidueUnitGroup::dlog(const AlgElement& x) const {
    if (!is_unit(x)) throw MathError("dlog of an element that is not a unit modulo the ideal");
    const auto& alg = *a_.algebra();
    const std::size_t n = a_.degree();
    ZVec e(gens_.size(), 0);
    AlgElement cur = reduce(x);
    std::size_t gi = 0;
    for (const auto& r : residues_) {
        if (r.order == 1) continue;
        auto k = residue_dlog(r, to_fp(r.prime.residue().quotient.coords(cur)));
        e[gi] = Int(static_cast<unsigned long>(k));
        if (k) cur = mul(cur, pow(gen_inverses_[gi], e[gi]));
        ++gi;
    }
    for (const auto& lv : levels_) {
        AlgElement y = cur;
        AlgElement one = alg.one();
        for (std::size_t t = 0; t < n; ++t) y[t] -= one[t];
        auto c = lv.q.coords(y);
        for (std::size_t i = 0; i < c.size(); ++i, ++gi) {
            e[gi] = c[i];
            if (c[i] != 0) cur = mul(cur, pow(gen_inverses_[gi], c[i]));
        }
    }
    if (reduce(cur) != reduce(alg.one())) throw MathError("dlog did not reach 1");
    return e;
}

}  // namespace cmorder
