#include "cmorder/principal.hpp"

#include "cmorder/config.hpp"

#include <cmath>
#include <complex>

namespace cmorder {

const char* to_string(Principality p) {
    switch (p) {
        case Principality::yes: return "yes";
        case Principality::no: return "no";
        default: return "unknown";
    }
}

AlgElement pad(const AlgElement& x, const AlgElement& e) {
    AlgElement y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= e[i];
    y[0] += 1;
    return y;
}

std::vector<std::size_t> component_roots(const Embedding& emb, const AlgElement& e) {
    auto s = emb.conjugates(e);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (s[k].re.to_d() > 0.5) out.push_back(k);
    return out;
}

namespace {

// Searches the lattice spanned by `basis` (inside eK, or all of K when e is
// null) for x with |N(x)| = norm, N computed on the padded element.
class GeneratorSearch {
public:
    GeneratorSearch(const AlgebraPtr& alg, const std::vector<AlgElement>& basis, const AlgElement* e, Rat norm)
        : alg_(alg), emb_(alg), e_(e), norm_(std::move(norm)) {
        rb_ = lll_reduce(basis, emb_);
        roots_ = e ? component_roots(emb_, *e) : std::vector<std::size_t>{};
        if (!e)
            for (std::size_t k = 0; k < alg->degree(); ++k) roots_.push_back(k);
        for (const auto& b : rb_.basis) {
            auto z = emb_.conjugates(b);
            std::vector<std::complex<long double>> row;
            for (auto k : roots_) row.emplace_back(z[k].re.to_ld(), z[k].im.to_ld());
            conj_.push_back(std::move(row));
        }
        log_norm_ = std::log(std::fabs(static_cast<long double>(norm_.get_d())));
    }

    std::size_t rank() const { return rb_.basis.size(); }

    AlgElement padded(const AlgElement& x) const { return e_ ? pad(x, *e_) : x; }

    std::optional<AlgElement> search(long double bound, std::size_t limit, bool& complete) const {
        std::optional<AlgElement> found;
        complete = enumerate_short_coeffs(rb_, bound, limit, [&](const std::vector<long long>& x) {
            if (!plausible(x)) return true;
            AlgElement y = combine(rb_, x);
            if (abs(alg_->norm(padded(y))) != norm_) return true;
            found = y;
            return false;
        });
        return found;
    }

private:
    bool plausible(const std::vector<long long>& x) const {
        long double s = 0;
        for (std::size_t k = 0; k < roots_.size(); ++k) {
            std::complex<long double> z = 0;
            for (std::size_t j = 0; j < x.size(); ++j)
                if (x[j]) z += static_cast<long double>(x[j]) * conj_[j][k];
            long double m = std::abs(z);
            if (m == 0) return false;
            s += std::log(m);
        }
        return std::fabs(s - log_norm_) <= 1e-6L * (1 + std::fabs(log_norm_));
    }

    AlgebraPtr alg_;
    Embedding emb_;
    const AlgElement* e_;
    Rat norm_;
    ReducedBasis rb_;
    std::vector<std::size_t> roots_;
    std::vector<std::vector<std::complex<long double>>> conj_;
    long double log_norm_ = 0;
};

long double minkowski_like(std::size_t n, const Rat& norm) {
    return static_cast<long double>(n) *
           std::pow(std::fabs(static_cast<long double>(norm.get_d())), 2.0L / static_cast<long double>(n));
}

// Exhaustive below `exact` when given, else doubling up to the vector limit.
PrincipalResult run_search(const GeneratorSearch& gs, const Rat& norm, std::optional<long double> exact) {
    PrincipalResult res;
    bool complete = false;
    if (exact) {
        res.bound = *exact;
        auto g = gs.search(*exact, std::numeric_limits<std::size_t>::max(), complete);
        res.status = g ? Principality::yes : Principality::no;
        if (g) res.generator = *g;
        return res;
    }
    long double bound = minkowski_like(gs.rank(), norm);
    const std::size_t limit = search_vector_limit();
    for (;;) {
        res.bound = bound;
        auto g = gs.search(bound, limit, complete);
        if (g) {
            res.status = Principality::yes;
            res.generator = *g;
            return res;
        }
        if (!complete) break;
        bound *= 2;
    }
    res.status = Principality::unknown;
    return res;
}

}  // namespace

PrincipalResult is_principal(const FracIdeal& l, const Order& t) {
    if (!t.is_module(l)) throw MathError("is_principal: lattice is not a module over the order");
    if (product(l, colon(t.lattice(), l)) != t.lattice()) throw MathError("is_principal: ideal is not invertible");
    return find_generator(l, t);
}

PrincipalResult principal_maximal(const FracIdeal& a) {
    const auto& alg = a.algebra();
    const Order ok = maximal_order(alg);
    PrincipalResult res;
    if (a == ok.lattice()) {
        res.status = Principality::yes;
        res.generator = alg->one();
        return res;
    }
    AlgElement gen(alg->degree(), Rat(0));
    res.status = Principality::yes;
    for (const auto& c : algebra_components(alg)) {
        auto basis = projected_basis(a, c.idempotent);
        Rat ni = component_index(ok.lattice(), a, c.idempotent);
        std::optional<AlgElement> x;
        if (basis == projected_basis(ok.lattice(), c.idempotent)) {
            x = c.idempotent;
        } else {
            GeneratorSearch gs(alg, basis, &c.idempotent, ni);
            std::optional<long double> exact;
            if (c.unit_rank() == 0) exact = minkowski_like(c.degree, ni);
            auto r = run_search(gs, ni, exact);
            res.bound = std::max(res.bound, r.bound);
            if (r.status == Principality::no) {
                res.status = Principality::no;
                res.generator.reset();
                return res;
            }
            if (r.status == Principality::unknown) res.status = Principality::unknown;
            x = r.generator;
        }
        if (x)
            for (std::size_t i = 0; i < gen.size(); ++i) gen[i] += (*x)[i];
    }
    if (res.status == Principality::yes) res.generator = gen;
    return res;
}

PrincipalResult find_generator(const FracIdeal& l, const Order& t) {
    const auto& alg = l.algebra();
    if (l == t.lattice()) {
        PrincipalResult res;
        res.status = Principality::yes;
        res.generator = alg->one();
        return res;
    }
    if (t.is_maximal()) return principal_maximal(l);
    const Rat norm = index(t.lattice(), l);
    const auto& comps = algebra_components(alg);
    std::optional<long double> exact = 0.0L;
    for (const auto& c : comps) {
        if (c.unit_rank() > 0) {
            exact.reset();
            break;
        }
        *exact += minkowski_like(c.degree, component_index(t.lattice(), l, c.idempotent));
    }
    GeneratorSearch gs(alg, l.basis_elements(), nullptr, norm);
    return run_search(gs, norm, exact);
}

}  // namespace cmorder
