#include "cmorder/order.hpp"

#include "cmorder/config.hpp"

#include <algorithm>
#include <optional>

namespace cmorder {

PrimeIdeal::PrimeIdeal(Int p, unsigned residue_degree, FracIdeal ideal, FracIdeal order_lattice,
                       std::shared_ptr<const ResidueField> residue)
    : p_(std::move(p)), f_(residue_degree), ideal_(std::move(ideal)), order_(std::move(order_lattice)),
      residue_(std::move(residue)) {}

Int PrimeIdeal::residue_size() const {
    Int q;
    mpz_pow_ui(q.get_mpz_t(), p_.get_mpz_t(), f_);
    return q;
}

struct Order::Impl {
    explicit Impl(FracIdeal l) : lattice(std::move(l)) {}

    FracIdeal lattice;
    std::recursive_mutex mu;
    std::optional<std::vector<std::vector<ZVec>>> table;
    std::optional<ZVec> one;
    std::optional<Int> disc;
    std::optional<Order> maximal;  // empty when this order is maximal
    std::optional<bool> is_maximal;
    std::optional<Int> index;
    std::optional<FracIdeal> conductor;
    std::map<Int, std::vector<PrimeIdeal>> primes;
    std::optional<std::vector<PrimeIdeal>> noninvertible;
};

namespace {

Int diag_product(const IntMatrix& b) {
    Int d = 1;
    for (std::size_t i = 0; i < b.rows(); ++i) d *= b(i, i);
    return d;
}

std::uint64_t small_prime(const Int& p) {
    if (p <= 1 || mpz_sizeinbase(p.get_mpz_t(), 2) > 63) throw MathError("prime " + p.get_str() + " is out of range");
    return mpz_get_ui(p.get_mpz_t());
}

// The lattice pS + (lift of the F_p-span `gens` of S/pS).
FracIdeal lift_mod_p(const FracIdeal& s, const Int& p, const FpMatrix& gens) {
    const std::size_t n = s.degree();
    IntMatrix rows(n + gens.size(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows(i, j) = s.basis()(i, j) * p;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        for (std::size_t j = 0; j < n; ++j) {
            Int acc = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (gens[g][i]) acc += Int(static_cast<unsigned long>(gens[g][i])) * s.basis()(i, j);
            rows(n + g, j) = acc;
        }
    }
    return FracIdeal::from_hnf(s.algebra(), s.denom(), hnf_mod(rows, p * diag_product(s.basis())));
}

// pS + lift of the nilradical of S/pS.
FracIdeal p_radical(const Order& s, const Int& p) {
    auto a = reduce_mod_p(s, small_prime(p));
    return lift_mod_p(s.lattice(), p, nilradical(a).basis());
}

// S/p with F_p coordinates taken from the quotient presentation.
ResidueField make_residue_field(const FracIdeal& s, const FracIdeal& ideal, std::uint64_t p) {
    FiniteQuotient q(s, ideal);
    const std::size_t f = q.rank();
    const auto& alg = *s.algebra();
    auto to_fp = [&](const std::vector<Int>& c) {
        FpVec v(f);
        for (std::size_t i = 0; i < f; ++i) v[i] = mpz_get_ui(c[i].get_mpz_t());
        return v;
    };
    std::vector<AlgElement> lifts;
    for (std::size_t i = 0; i < f; ++i) {
        std::vector<Int> e(f, 0);
        e[i] = 1;
        lifts.push_back(q.lift(e));
    }
    std::vector<std::vector<FpVec>> table(f, std::vector<FpVec>(f));
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = i; j < f; ++j) table[i][j] = table[j][i] = to_fp(q.coords(alg.mul(lifts[i], lifts[j])));
    FpVec one = to_fp(q.coords(alg.one()));
    return ResidueField{std::move(q), FpAlgebra(p, f, std::move(table), std::move(one))};
}

struct MaximalSlot {
    Int denom;
    IntMatrix basis;
    mutable std::mutex mu;
    mutable std::weak_ptr<void> live;
};

std::shared_ptr<const MaximalSlot> compute_maximal(const AlgebraPtr& alg) {
    FracIdeal o = FracIdeal::equation_lattice(alg);
    for (const auto& [p, e] : factor(alg->discriminant())) {
        if (e < 2) continue;
        for (;;) {
            Order cur = Order::trusted(o);
            FracIdeal r = p_radical(cur, p);
            FracIdeal next = colon(r, r);
            if (next == o) break;
            o = next;
        }
    }
    auto slot = std::make_shared<MaximalSlot>();
    slot->denom = o.denom();
    slot->basis = o.basis();
    return slot;
}

}  // namespace

Order Order::from_lattice(const FracIdeal& l) {
    if (!l.contains(l.algebra()->one())) throw MathError("lattice does not contain 1");
    if (product(l, l) != l) throw MathError("lattice is not closed under multiplication");
    return trusted(l);
}

Order Order::trusted(const FracIdeal& l) { return Order(std::make_shared<Impl>(l)); }

Order Order::equation_order(const AlgebraPtr& alg) { return trusted(FracIdeal::equation_lattice(alg)); }

const FracIdeal& Order::lattice() const {
    if (!impl_) throw MathError("use of an empty order");
    return impl_->lattice;
}

const std::vector<std::vector<ZVec>>& Order::mult_table() const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    if (!impl_->table) {
        const auto& l = impl_->lattice;
        const std::size_t n = l.degree();
        auto b = l.basis_elements();
        std::vector<std::vector<ZVec>> t(n, std::vector<ZVec>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                auto c = l.coordinates(algebra()->mul(b[i], b[j]));
                if (!c) throw MathError("order basis is not closed under multiplication");
                t[i][j] = *c;
                t[j][i] = *c;
            }
        impl_->table = std::move(t);
    }
    return *impl_->table;
}

const ZVec& Order::one_coords() const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    if (!impl_->one) {
        auto c = impl_->lattice.coordinates(algebra()->one());
        if (!c) throw MathError("order does not contain 1");
        impl_->one = *c;
    }
    return *impl_->one;
}

const Int& Order::discriminant() const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    if (!impl_->disc) {
        const auto& l = impl_->lattice;
        const std::size_t n = l.degree();
        RatMatrix gram(n, n);
        auto b = l.basis_elements();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) gram(i, j) = gram(j, i) = algebra()->trace(algebra()->mul(b[i], b[j]));
        Rat d = determinant(gram);
        if (d.get_den() != 1) throw MathError("order discriminant is not integral");
        impl_->disc = d.get_num();
    }
    return *impl_->disc;
}

Order maximal_order(const AlgebraPtr& alg) {
    auto slot = alg->memo<MaximalSlot>("maximal_order", [&] { return compute_maximal(alg); });
    std::lock_guard<std::mutex> g(slot->mu);
    if (auto live = std::static_pointer_cast<Order::Impl>(slot->live.lock())) return Order(live);
    auto impl = std::make_shared<Order::Impl>(FracIdeal::from_hnf(alg, slot->denom, slot->basis));
    impl->is_maximal = true;
    slot->live = impl;
    return Order(impl);
}

Order Order::maximal_order() const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    if (is_maximal()) return *this;
    return *impl_->maximal;
}

bool Order::is_maximal() const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    if (!impl_->is_maximal) {
        Order ok = cmorder::maximal_order(algebra());
        impl_->is_maximal = ok.lattice() == impl_->lattice;
        if (!*impl_->is_maximal) impl_->maximal = ok;
    }
    return *impl_->is_maximal;
}

const Int& Order::index_in_maximal() const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    if (!impl_->index) {
        Rat r = index(maximal_order().lattice(), impl_->lattice);
        if (r.get_den() != 1) throw MathError("order is not contained in the maximal order");
        impl_->index = r.get_num();
    }
    return *impl_->index;
}

const FracIdeal& Order::conductor() const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    if (!impl_->conductor) impl_->conductor = colon(impl_->lattice, maximal_order().lattice());
    return *impl_->conductor;
}

FpAlgebra reduce_mod_p(const Order& s, std::uint64_t p) {
    const std::size_t n = s.degree();
    const auto& t = s.mult_table();
    auto red = [&](const ZVec& v) {
        FpVec r(n);
        for (std::size_t k = 0; k < n; ++k) {
            Int m = mod_nonneg(v[k], Int(static_cast<unsigned long>(p)));
            r[k] = mpz_get_ui(m.get_mpz_t());
        }
        return r;
    };
    std::vector<std::vector<FpVec>> table(n, std::vector<FpVec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i][j] = red(t[i][j]);
    return FpAlgebra(p, n, std::move(table), red(s.one_coords()));
}

const std::vector<PrimeIdeal>& Order::primes_above(const Int& p) const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    auto it = impl_->primes.find(p);
    if (it != impl_->primes.end()) return it->second;
    if (!is_probable_prime(p)) throw MathError(p.get_str() + " is not prime");
    const std::uint64_t pp = small_prime(p);
    const std::size_t n = degree();
    const FracIdeal& s = impl_->lattice;

    FpAlgebra a = reduce_mod_p(*this, pp);
    FpSubspace rad = nilradical(a);
    std::vector<std::size_t> keep;
    FpAlgebra b = quotient_algebra(a, rad, keep);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ pp);
    std::vector<PrimeIdeal> out;
    for (const auto& e : primitive_idempotents(b, rng)) {
        // Maximal ideal: rad + lift((1 - e) B).
        FpSubspace m(n, pp, rad.basis());
        FpVec ce = b.sub(b.one(), e);
        for (std::size_t l = 0; l < b.dim(); ++l) {
            FpVec u = b.mul(ce, b.basis(l));
            FpVec lift(n, 0);
            for (std::size_t i = 0; i < keep.size(); ++i) lift[keep[i]] = u[i];
            m.add(lift);
        }
        auto f = static_cast<unsigned>(n - m.dim());
        FracIdeal ideal = lift_mod_p(s, p, m.basis());
        auto residue = std::make_shared<ResidueField>(make_residue_field(s, ideal, pp));
        out.emplace_back(p, f, ideal, s, std::move(residue));
    }
    std::sort(out.begin(), out.end());
    if (verification_mode()) {
        for (const auto& q : out) {
            Rat idx = index(s, q.ideal());
            verify_that(idx == Rat(q.residue_size()), "prime index equals p^f");
            verify_that(q.ideal().contains(s.scaled(Rat(p))), "p lies in the prime");
        }
    }
    return impl_->primes.emplace(p, std::move(out)).first->second;
}

const std::vector<PrimeIdeal>& Order::noninvertible_primes() const {
    std::lock_guard<std::recursive_mutex> g(impl_->mu);
    if (!impl_->noninvertible) {
        std::vector<PrimeIdeal> out;
        if (!is_maximal()) {
            const FracIdeal& f = conductor();
            for (const auto& p : prime_divisors(index_in_maximal()))
                for (const auto& q : primes_above(p))
                    if (q.ideal().contains(f)) out.push_back(q);
            if (out.empty()) throw MathError("non-maximal order without non-invertible primes");
        }
        impl_->noninvertible = std::move(out);
    }
    return *impl_->noninvertible;
}

bool Order::is_module(const FracIdeal& m) const { return product(impl_->lattice, m) == m; }

Order multiplicator_ring(const FracIdeal& i) {
    FracIdeal r = colon(i, i);
    try {
        return Order::from_lattice(r);
    } catch (const MathError&) {
        throw MathError("internal error: multiplicator ring failed the ring check");
    }
}

bool is_invertible_prime(const Order& s, const PrimeIdeal& p) {
    bool coprime = sum(p.ideal(), s.conductor()) == s.lattice();
    if (verification_mode()) {
        bool dim_one = dim_quotient_at_prime(s.maximal_order().lattice(), p) == 1;
        bool product_one = product(p.ideal(), colon(s.lattice(), p.ideal())) == s.lattice();
        verify_that(coprime == dim_one && coprime == product_one, "invertible prime criteria agree");
    }
    return coprime;
}

namespace {

unsigned residue_dimension(const Rat& idx, const PrimeIdeal& p) {
    if (idx.get_den() != 1) throw MathError("quotient index is not integral");
    Int n = idx.get_num();
    unsigned v = valuation(n, p.p());
    Int rest = n;
    for (unsigned i = 0; i < v; ++i) rest /= p.p();
    if (rest != 1) throw MathError("quotient is not a vector space over the residue field");
    if (v % p.residue_degree() != 0) throw MathError("quotient dimension is not a multiple of the residue degree");
    return v / p.residue_degree();
}

}  // namespace

unsigned dim_quotient_at_prime(const FracIdeal& m, const PrimeIdeal& p) {
    if (product(p.order_lattice(), m) != m) throw MathError("lattice is not a module over the prime's order");
    return residue_dimension(index(m, product(p.ideal(), m)), p);
}

unsigned dim_over_residue(const FracIdeal& a, const FracIdeal& b, const PrimeIdeal& p) {
    if (!a.contains(b)) throw MathError("dim_over_residue needs b inside a");
    if (!b.contains(product(p.ideal(), a))) throw MathError("quotient is not killed by the prime");
    return residue_dimension(index(a, b), p);
}

bool locally_contains(const FracIdeal& a, const FracIdeal& b, const PrimeIdeal& p) {
    FracIdeal c = intersect(colon(a, b), p.order_lattice());
    return !p.ideal().contains(c);
}

bool locally_equal(const FracIdeal& a, const FracIdeal& b, const PrimeIdeal& p) {
    return locally_contains(a, b, p) && locally_contains(b, a, p);
}

nlohmann::json to_json(const Order& s) {
    return {{"lattice", to_json(s.lattice())},
            {"discriminant", s.discriminant().get_str()},
            {"maximal", s.is_maximal()}};
}

nlohmann::json to_json(const PrimeIdeal& p) {
    return {{"p", p.p().get_str()}, {"residue_degree", p.residue_degree()}, {"ideal", to_json(p.ideal())}};
}

}  // namespace cmorder
