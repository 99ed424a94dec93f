#include "cmorder/picard.hpp"

#include "cmorder/config.hpp"
#include "cmorder/factor.hpp"
#include "cmorder/overorder.hpp"

#include <sstream>

namespace cmorder {

namespace {

std::string ideal_key(const FracIdeal& g) {
    std::ostringstream os;
    os << "picard:" << g.denom().get_str();
    for (const auto& x : g.basis().data()) os << ',' << x.get_str();
    return os.str();
}

// Primes of O_K containing g.
std::vector<PrimeIdeal> primes_over(const Order& ok, const FracIdeal& g) {
    std::vector<PrimeIdeal> out;
    for (const auto& q : prime_divisors(quotient(ok.lattice(), g).order))
        for (const auto& pr : ok.primes_above(q))
            if (pr.ideal().contains(g)) out.push_back(pr);
    return out;
}

bool coprime_to(const FracIdeal& a, const std::vector<PrimeIdeal>& bad) {
    for (const auto& pr : bad)
        if (pr.ideal().contains(a)) return false;
    return true;
}

// Characteristic polynomial of a square integer matrix, ascending, by the
// Faddeev-LeVerrier recursion over Q.
std::vector<Int> matrix_charpoly(const IntMatrix& a) {
    const std::size_t n = a.rows();
    RatMatrix ar = to_rational(a);
    RatMatrix m(n, n);
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix prev = m;
        for (std::size_t i = 0; i < n; ++i) prev(i, i) += c[n - k + 1];
        m = ar * prev;
        Rat tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        c[n - k] = -tr / Rat(static_cast<long>(k));
    }
    std::vector<Int> out;
    for (auto& x : c) {
        x.canonicalize();
        if (x.get_den() != 1) throw MathError("non-integral characteristic polynomial");
        out.push_back(x.get_num());
    }
    return out;
}

}  // namespace

std::shared_ptr<const PicardContext> picard_context(const AlgebraPtr& alg, const FracIdeal& modulus) {
    return alg->memo<PicardContext>(ideal_key(modulus), [&] {
        auto ctx = std::make_shared<PicardContext>();
        const Order ok = maximal_order(alg);
        ctx->modulus = modulus;
        ctx->big = std::make_shared<ResidueUnitGroup>(ok, modulus);
        const auto& units = unit_group(alg);
        const auto& cl = class_group(alg);
        ctx->classes = class_generators_coprime(alg, modulus);
        for (const auto& u : units.generators()) ctx->unit_logs.push_back(ctx->big->dlog(u));
        ctx->certified = units.certified && cl.certified;
        return std::shared_ptr<const PicardContext>(ctx);
    });
}

PicardGroup::PicardGroup(const Order& t, std::shared_ptr<const PicardContext> ctx)
    : t_(t), ctx_(std::move(ctx)) {
    const auto& big = *ctx_->big;
    if (!t.lattice().contains(ctx_->modulus)) throw MathError("picard_group: modulus is not inside the order");
    ResidueUnitGroup small(t, ctx_->modulus);
    m_ = big.generators().size();
    const std::size_t c = ctx_->classes.size();
    const std::size_t cols = m_ + c;
    IntMatrix rel(0, cols);
    auto padded = [&](const ZVec& v) {
        ZVec r(cols, 0);
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
        return r;
    };
    for (std::size_t i = 0; i < big.relations().rows(); ++i) rel.append_row(padded(big.relations().row(i)));
    for (const auto& s : small.generators()) rel.append_row(padded(big.dlog(s)));
    for (const auto& u : ctx_->unit_logs) rel.append_row(padded(u));
    for (std::size_t j = 0; j < c; ++j) {
        ZVec r(cols, 0);
        ZVec d = big.dlog(ctx_->classes[j].power_generator);
        for (std::size_t i = 0; i < m_; ++i) r[i] = -d[i];
        r[m_ + j] = ctx_->classes[j].order;
        rel.append_row(r);
    }
    exact_ = ctx_->certified;
    if (cols == 0) return;
    auto s = snf(rel);
    if (s.divisors.size() < cols) throw MathError("picard_group: relation lattice is not of full rank");
    for (const auto& d : s.divisors)
        if (d == 0) throw MathError("picard_group: relation lattice is not of full rank");
    right_ = s.right;
    right_inv_ = s.right_inverse;
    offset_ = 0;
    while (offset_ < s.divisors.size() && s.divisors[offset_] == 1) ++offset_;
    for (std::size_t i = offset_; i < s.divisors.size(); ++i) {
        inv_.push_back(s.divisors[i]);
        size_ *= s.divisors[i];
    }
    for (std::size_t k = 0; k < inv_.size(); ++k) {
        ZVec e(inv_.size(), 0);
        e[k] = 1;
        gens_.push_back(element(e));
    }
}

std::string PicardGroup::certification() const {
    if (exact_) return "exact";
    return "conditional(" + std::to_string(saturation_bound()) + ")";
}

ZVec PicardGroup::reduce(const ZVec& x) const {
    ZVec out(inv_.size(), 0);
    if (inv_.empty()) return out;
    ZVec y = row_times(x, right_);
    for (std::size_t k = 0; k < inv_.size(); ++k) out[k] = mod_nonneg(y[offset_ + k], inv_[k]);
    return out;
}

FracIdeal PicardGroup::element(const ZVec& coords) const {
    if (coords.size() != inv_.size()) throw MathError("PicardGroup::element: wrong number of coordinates");
    const auto& alg = t_.algebra();
    const Order ok = maximal_order(alg);
    if (inv_.empty()) return t_.lattice();
    const auto& big = *ctx_->big;
    const std::size_t cols = m_ + ctx_->classes.size();
    ZVec x(cols, 0);
    for (std::size_t k = 0; k < inv_.size(); ++k) {
        Int ck = mod_nonneg(coords[k], inv_[k]);
        for (std::size_t i = 0; i < cols; ++i) x[i] += ck * right_inv_(offset_ + k, i);
    }
    AlgElement alpha = big.reduce(alg->one());
    for (std::size_t j = 0; j < ctx_->classes.size(); ++j) {
        const auto& cg = ctx_->classes[j];
        Int q = floor_div(x[m_ + j], cg.order);
        x[m_ + j] -= q * cg.order;
        alpha = big.mul(alpha, big.pow(cg.power_generator, mod_nonneg(q, big.order())));
    }
    for (std::size_t i = 0; i < m_; ++i)
        alpha = big.mul(alpha, big.pow(big.generators()[i], mod_nonneg(x[i], big.order())));
    // alpha only matters modulo g; move it off the zero divisors.
    const Int n = big.modulus().contains(alg->one()) ? Int(1) : quotient(ok.lattice(), big.modulus()).order;
    while (alg->is_zero_divisor(alpha)) alpha[0] += Rat(n);
    FracIdeal a = ok.lattice().scaled(alpha);
    for (std::size_t j = 0; j < ctx_->classes.size(); ++j)
        for (Int e = 0; e < x[m_ + j]; ++e) a = product(a, ctx_->classes[j].ideal);
    return normalize_in(intersect(a, t_.lattice()), t_);
}

std::vector<FracIdeal> PicardGroup::elements(std::size_t limit) const {
    if (size_ > Int(static_cast<unsigned long>(limit))) throw MathError("Picard group too large to list");
    std::vector<FracIdeal> out;
    ZVec c(inv_.size(), 0);
    while (true) {
        out.push_back(element(c));
        std::size_t k = inv_.size();
        while (k > 0) {
            --k;
            if (++c[k] < inv_[k]) break;
            c[k] = 0;
            if (k == 0) return out;
        }
        if (inv_.empty()) return out;
    }
}

ZVec PicardGroup::dlog(const FracIdeal& l) const {
    if (inv_.empty()) return {};
    const auto& alg = t_.algebra();
    const Order ok = maximal_order(alg);
    const auto bad = primes_over(ok, ctx_->modulus);
    // beta in (T:L) with beta*L coprime to the modulus.
    FracIdeal inv = colon(t_.lattice(), l);
    if (product(l, inv) != t_.lattice()) throw MathError("PicardGroup::dlog: ideal is not invertible");
    Embedding emb(alg);
    auto rb = lll_reduce(inv.basis_elements(), emb);
    std::optional<FracIdeal> a;
    long double bound = 2 * rb.gram[0][0];
    for (int round = 0; round < 40 && !a; ++round, bound *= 2) {
        enumerate_short(rb, bound, search_vector_limit(), [&](const AlgElement& beta) {
            if (alg->is_zero_divisor(beta)) return true;
            FracIdeal c = product(l.scaled(beta), ok.lattice());
            if (!coprime_to(c, bad)) return true;
            a = c;
            return false;
        });
    }
    if (!a) throw MathError("PicardGroup::dlog: no multiple coprime to the modulus");
    // Find the Cl(O_K) class: a * prod a_j^c_j = gamma O_K.
    const auto& cls = ctx_->classes;
    std::vector<Int> c(cls.size(), 0);
    while (true) {
        FracIdeal b = *a;
        for (std::size_t j = 0; j < cls.size(); ++j)
            for (Int e = 0; e < c[j]; ++e) b = product(b, cls[j].ideal);
        auto pr = principal_maximal(b);
        if (pr.status == Principality::yes) {
            ZVec x(m_ + cls.size(), 0);
            ZVec d = ctx_->big->dlog(*pr.generator);
            for (std::size_t i = 0; i < m_; ++i) x[i] = d[i];
            for (std::size_t j = 0; j < cls.size(); ++j) x[m_ + j] = -c[j];
            return reduce(x);
        }
        std::size_t k = cls.size();
        while (k > 0) {
            --k;
            if (++c[k] < cls[k].order) break;
            c[k] = 0;
            if (k == 0) throw MathError("PicardGroup::dlog: class group search failed");
        }
        if (cls.empty()) throw MathError("PicardGroup::dlog: class group search failed");
    }
}

PicardGroup picard_group(const Order& t) { return picard_group(t, t.conductor()); }

PicardGroup picard_group(const Order& t, const FracIdeal& modulus) {
    return PicardGroup(t, picard_context(t.algebra(), modulus));
}

FracIdeal normalize_in(const FracIdeal& l, const Order& t) {
    FracIdeal m = colon(t.lattice(), l);
    const std::size_t n = m.degree();
    // Rational coordinates of 1 in the basis of m.
    QVec e(n, Rat(0));
    e[0] = Rat(m.denom());
    auto v = solve_exact(m.basis().transpose(), e);
    if (!v) throw MathError("normalize_in: singular lattice");
    Int d = common_denominator(*v);
    Int g = 0;
    for (const auto& x : *v) {
        Rat y = x * Rat(d);
        y.canonicalize();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_num().get_mpz_t());
    }
    Rat r(d, g);
    r.canonicalize();
    return l.scaled(r);
}

Principality isomorphic(const FracIdeal& i, const FracIdeal& j) {
    if (!weak_equivalent(i, j)) return Principality::no;
    const Order t = multiplicator_ring(i);
    return is_principal(colon(j, i), t).status;
}

IcmDescription icm(const Order& s, unsigned threads) {
    IcmDescription d;
    d.base = s;
    auto lat = overorders(s, threads);
    auto ctx = picard_context(s.algebra(), s.conductor());
    d.parts.resize(lat.members.size());
    d.types.resize(lat.members.size());
    parallel_for(lat.members.size(), threads, [&](std::size_t k) {
        const Order& t = lat.members[k];
        d.types[k] = global_type(t).global_type;
        d.parts[k] = IcmPart{weak_classes(s, t), PicardGroup(t, ctx)};
    });
    for (const auto& p : d.parts) {
        d.total += p.count();
        d.exact = d.exact && p.pic.exact();
    }
    return d;
}

std::vector<FracIdeal> icm_representatives(const IcmPart& part, std::size_t limit) {
    if (part.count() > Int(static_cast<unsigned long>(limit))) throw MathError("too many classes to list");
    std::vector<FracIdeal> out;
    const Order& t = part.weak.order;
    for (const auto& l : part.pic.elements(limit))
        for (const auto& i : part.weak.reps) out.push_back(normalize_in(product(l, i), t));
    return out;
}

nlohmann::json to_json(const PicardGroup& g) {
    nlohmann::json inv = nlohmann::json::array();
    for (const auto& x : g.invariants()) inv.push_back(x.get_str());
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& x : g.generators()) gens.push_back(to_json(x));
    return {{"order_index", g.order().index_in_maximal().get_str()},
            {"size", g.size().get_str()},
            {"divisors", inv},
            {"generators", gens},
            {"certification", g.certification()}};
}

nlohmann::json to_json(const IcmDescription& d, bool with_parts) {
    nlohmann::json j = {{"total", d.total.get_str()},
                        {"overorders", std::to_string(d.parts.size())},
                        {"certification", d.exact ? "exact" : "conditional(" + std::to_string(saturation_bound()) + ")"}};
    if (with_parts) {
        nlohmann::json parts = nlohmann::json::array();
        for (std::size_t k = 0; k < d.parts.size(); ++k) {
            const auto& p = d.parts[k];
            nlohmann::json inv = nlohmann::json::array();
            for (const auto& x : p.pic.invariants()) inv.push_back(x.get_str());
            parts.push_back({{"index", p.weak.order.index_in_maximal().get_str()},
                             {"type", d.types[k]},
                             {"weak_classes", std::to_string(p.weak.reps.size())},
                             {"pic_divisors", inv},
                             {"certification", p.pic.certification()}});
        }
        j["parts"] = parts;
    }
    return j;
}

IntMatrix multiplication_matrix(const FracIdeal& l, const AlgElement& x) {
    const auto& alg = l.algebra();
    IntMatrix m(0, l.degree());
    for (const auto& b : l.basis_elements()) {
        auto c = l.coordinates(alg->mul(x, b));
        if (!c) throw MathError("multiplication_matrix: lattice is not stable");
        m.append_row(*c);
    }
    return m;
}

MatrixClasses matrix_conjugacy_classes(const std::vector<Int>& f, unsigned threads, std::size_t max_matrices) {
    auto alg = EtaleAlgebra::make(f);
    auto d = icm(Order::equation_order(alg), threads);
    MatrixClasses out;
    out.count = d.total;
    out.exact = d.exact;
    if (max_matrices == 0 || d.total > Int(static_cast<unsigned long>(max_matrices))) return out;
    for (const auto& part : d.parts)
        for (const auto& rep : icm_representatives(part, max_matrices)) {
            IntMatrix m = multiplication_matrix(rep, alg->gen());
            if (matrix_charpoly(m) != f) throw VerificationError("matrix has the wrong characteristic polynomial");
            out.matrices.push_back(std::move(m));
        }
    return out;
}

Order weil_order(const AlgebraPtr& alg, const Int& q) {
    auto inv = alg->inverse(alg->gen());
    if (!inv) throw MathError("weil_order: x is a zero divisor");
    AlgElement v = *inv;
    for (auto& c : v) c *= Rat(q);
    if (!maximal_order(alg).lattice().contains(v)) throw MathError("weil_order: q/x is not integral");
    Order r = ring_closure(Order::equation_order(alg), {v});
    verify_that(r.lattice().contains(alg->one()) && r.is_module(r.lattice()), "Z[x, q/x] is an order");
    return r;
}

IcmDescription av_isomorphism_classes(const std::vector<Int>& f, const Int& q, unsigned threads) {
    auto alg = EtaleAlgebra::make(f);
    return icm(weil_order(alg, q), threads);
}

}  // namespace cmorder
