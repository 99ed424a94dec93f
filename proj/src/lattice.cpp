#include "cmorder/lattice.hpp"

namespace cmorder {

namespace {

// Inverse of a nonsingular upper-triangular integer matrix.
RatMatrix upper_inverse(const IntMatrix& b) {
    const std::size_t n = b.rows();
    RatMatrix inv(n, n);
    for (std::size_t i = n; i-- > 0;) {
        inv(i, i) = Rat(1) / Rat(b(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat s = 0;
            for (std::size_t k = i + 1; k <= j; ++k)
                if (b(i, k) != 0) s += b(i, k) * inv(k, j);
            inv(i, j) = -s / b(i, i);
        }
    }
    return inv;
}

Int product_of_diagonal(const IntMatrix& b) {
    Int d = 1;
    for (std::size_t i = 0; i < b.rows(); ++i) d *= b(i, i);
    return d;
}

}  // namespace

FracIdeal FracIdeal::from_rows(AlgebraPtr alg, const IntMatrix& rows, const Int& denom) {
    const std::size_t n = alg->degree();
    if (rows.cols() != n) throw MathError("lattice rows have the wrong length");
    if (denom <= 0) throw MathError("lattice denominator must be positive");
    IntMatrix b;
    if (rows.rows() == n) {
        Int det = determinant(rows);
        if (det == 0) throw MathError("generators do not span a full-rank lattice");
        b = hnf_mod(rows, det);
    } else {
        b = hnf_basis(rows);
        if (b.rows() != n) throw MathError("generators do not span a full-rank lattice");
    }
    Int g = denom;
    for (const auto& x : b.data()) g = gcd(g, x);
    if (g != 1) {
        IntMatrix r(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j) = b(i, j) / g;
        return FracIdeal(std::move(alg), denom / g, std::move(r));
    }
    return FracIdeal(std::move(alg), denom, std::move(b));
}

FracIdeal FracIdeal::from_hnf(AlgebraPtr alg, Int denom, IntMatrix b) {
    Int g = denom;
    for (const auto& x : b.data()) {
        if (g == 1) break;
        g = gcd(g, x);
    }
    if (g != 1) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) /= g;
        denom /= g;
    }
    return FracIdeal(std::move(alg), std::move(denom), std::move(b));
}

FracIdeal FracIdeal::from_rational_rows(AlgebraPtr alg, const RatMatrix& rows) {
    Int d = common_denominator(rows);
    IntMatrix m(rows.rows(), rows.cols());
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) {
            Rat v = rows(i, j) * d;
            m(i, j) = v.get_num();
        }
    return from_rows(std::move(alg), m, d);
}

FracIdeal FracIdeal::from_elements(AlgebraPtr alg, const std::vector<AlgElement>& elems) {
    const std::size_t n = alg->degree();
    RatMatrix m(elems.size(), n);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i].size() != n) throw MathError("element of the wrong dimension");
        m.set_row(i, elems[i]);
    }
    return from_rational_rows(std::move(alg), m);
}

FracIdeal FracIdeal::equation_lattice(AlgebraPtr alg) {
    std::size_t n = alg->degree();
    return FracIdeal(std::move(alg), 1, IntMatrix::identity(n));
}

AlgElement FracIdeal::basis_element(std::size_t i) const {
    AlgElement e(degree());
    for (std::size_t j = 0; j < degree(); ++j) {
        e[j] = Rat(basis_(i, j), denom_);
        e[j].canonicalize();
    }
    return e;
}

std::vector<AlgElement> FracIdeal::basis_elements() const {
    std::vector<AlgElement> v;
    for (std::size_t i = 0; i < degree(); ++i) v.push_back(basis_element(i));
    return v;
}

std::optional<ZVec> FracIdeal::coordinates(const AlgElement& x) const {
    const std::size_t n = degree();
    ZVec v(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat s = x[j] * denom_;
        if (s.get_den() != 1) return std::nullopt;
        v[j] = s.get_num();
    }
    ZVec c(n);
    for (std::size_t j = 0; j < n; ++j) {
        Int r = v[j];
        for (std::size_t i = 0; i < j; ++i)
            if (c[i] != 0 && basis_(i, j) != 0) r -= c[i] * basis_(i, j);
        if (!mpz_divisible_p(r.get_mpz_t(), basis_(j, j).get_mpz_t())) return std::nullopt;
        mpz_divexact(c[j].get_mpz_t(), r.get_mpz_t(), basis_(j, j).get_mpz_t());
    }
    return c;
}

bool FracIdeal::contains(const FracIdeal& other) const {
    const std::size_t n = degree();
    // other rows / d_o in this lattice: row * (d / d_o) must be integral first.
    for (std::size_t i = 0; i < n; ++i) {
        ZVec v(n);
        for (std::size_t j = 0; j < n; ++j) {
            Int s = other.basis_(i, j) * denom_;
            if (!mpz_divisible_p(s.get_mpz_t(), other.denom_.get_mpz_t())) return false;
            mpz_divexact(v[j].get_mpz_t(), s.get_mpz_t(), other.denom_.get_mpz_t());
        }
        ZVec c(n);
        for (std::size_t j = 0; j < n; ++j) {
            Int r = v[j];
            for (std::size_t k = 0; k < j; ++k)
                if (c[k] != 0 && basis_(k, j) != 0) r -= c[k] * basis_(k, j);
            if (!mpz_divisible_p(r.get_mpz_t(), basis_(j, j).get_mpz_t())) return false;
            mpz_divexact(c[j].get_mpz_t(), r.get_mpz_t(), basis_(j, j).get_mpz_t());
        }
    }
    return true;
}

Rat FracIdeal::volume() const {
    Int dn = 1;
    for (std::size_t i = 0; i < degree(); ++i) dn *= denom_;
    Rat v(product_of_diagonal(basis_), dn);
    v.canonicalize();
    return v;
}

FracIdeal FracIdeal::scaled(const AlgElement& x) const {
    const std::size_t n = degree();
    Int xd = common_denominator(x);
    ZVec xn(n);
    for (std::size_t j = 0; j < n; ++j) xn[j] = Rat(x[j] * xd).get_num();
    Int nx = determinant(alg_->regular_rep(xn));
    if (nx == 0) throw MathError("scaling by a zero divisor");
    IntMatrix rows(n, n);
    for (std::size_t i = 0; i < n; ++i) rows.set_row(i, alg_->mul(basis_.row(i), xn));
    IntMatrix b = hnf_mod(rows, product_of_diagonal(basis_) * nx);
    return from_hnf(alg_, denom_ * xd, std::move(b));
}

FracIdeal FracIdeal::scaled(const Rat& c) const {
    if (c == 0) throw MathError("scaling by zero");
    IntMatrix b = basis_;
    Int num = abs(c.get_num());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= num;
    return from_hnf(alg_, denom_ * c.get_den(), std::move(b));
}

Int FracIdeal::min_integer_scaled() const {
    const std::size_t n = degree();
    // y with y * B = e_0, forward substitution.
    std::vector<Rat> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat r = (j == 0) ? Rat(1) : Rat(0);
        for (std::size_t i = 0; i < j; ++i)
            if (basis_(i, j) != 0) r -= y[i] * basis_(i, j);
        y[j] = r / basis_(j, j);
    }
    return common_denominator(y);
}

std::size_t FracIdeal::hash() const {
    std::size_t h = mpz_get_ui(denom_.get_mpz_t());
    for (const auto& x : basis_.data()) {
        std::size_t v = mpz_get_ui(x.get_mpz_t());
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool operator<(const FracIdeal& a, const FracIdeal& b) {
    int c = cmp(a.denom_, b.denom_);
    if (c != 0) return c < 0;
    const auto& x = a.basis_.data();
    const auto& y = b.basis_.data();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        c = cmp(x[i], y[i]);
        if (c != 0) return c < 0;
    }
    return x.size() < y.size();
}

FracIdeal sum(const FracIdeal& a, const FracIdeal& b) {
    const std::size_t n = a.degree();
    Int d = lcm(a.denom(), b.denom());
    Int fa = d / a.denom(), fb = d / b.denom();
    IntMatrix rows(2 * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rows(i, j) = a.basis()(i, j) * fa;
            rows(n + i, j) = b.basis()(i, j) * fb;
        }
    Int ma = product_of_diagonal(a.basis()), mb = product_of_diagonal(b.basis());
    for (std::size_t i = 0; i < n; ++i) {
        ma *= fa;
        mb *= fb;
    }
    IntMatrix h = hnf_mod(rows, cmp(ma, mb) <= 0 ? ma : mb);
    return FracIdeal::from_hnf(a.algebra(), d, std::move(h));
}

FracIdeal product(const FracIdeal& a, const FracIdeal& b) {
    const std::size_t n = a.degree();
    const auto& alg = *a.algebra();
    IntMatrix rows(n * n, n);
    std::vector<ZVec> ar(n), br(n);
    for (std::size_t i = 0; i < n; ++i) {
        ar[i] = a.basis().row(i);
        br[i] = b.basis().row(i);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows.set_row(i * n + j, alg.mul(ar[i], br[j]));
    // m_a * 1 lies in the basis span of a, so m_a * det(B_b) Z^n ⊆ span.
    Int m1 = a.min_integer_scaled() * product_of_diagonal(b.basis());
    Int m2 = b.min_integer_scaled() * product_of_diagonal(a.basis());
    IntMatrix h = hnf_mod(rows, cmp(m1, m2) <= 0 ? m1 : m2);
    return FracIdeal::from_hnf(a.algebra(), a.denom() * b.denom(), std::move(h));
}

FracIdeal trace_dual(const FracIdeal& a) {
    const std::size_t n = a.degree();
    // Dual basis rows: d * B^{-T} * G^{-1}.
    RatMatrix binv_t = upper_inverse(a.basis()).transpose();
    RatMatrix m = binv_t * a.algebra()->gram_inverse();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) *= a.denom();
    return FracIdeal::from_rational_rows(a.algebra(), m);
}

FracIdeal colon(const FracIdeal& a, const FracIdeal& b) { return trace_dual(product(b, trace_dual(a))); }

FracIdeal intersect(const FracIdeal& a, const FracIdeal& b) {
    return trace_dual(sum(trace_dual(a), trace_dual(b)));
}

Rat index(const FracIdeal& a, const FracIdeal& b) { return b.volume() / a.volume(); }

FracIdeal power(const FracIdeal& a, unsigned k) {
    if (k == 0) throw MathError("power needs k >= 1");
    FracIdeal r = a;
    for (unsigned i = 1; i < k; ++i) r = product(r, a);
    return r;
}

FracIdeal ideal_from_generators(AlgebraPtr alg, const std::vector<AlgElement>& gens, const FracIdeal* over) {
    if (!over) return FracIdeal::from_elements(std::move(alg), gens);
    std::vector<AlgElement> all;
    auto sb = over->basis_elements();
    for (const auto& g : gens)
        for (const auto& s : sb) all.push_back(alg->mul(g, s));
    return FracIdeal::from_elements(std::move(alg), all);
}

namespace {

IntMatrix basis_change(const FracIdeal& a, const FracIdeal& b) {
    const std::size_t n = a.degree();
    IntMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto co = a.coordinates(b.basis_element(i));
        if (!co) throw MathError("quotient requires the second lattice inside the first");
        c.set_row(i, *co);
    }
    return c;
}

}  // namespace

QuotientData quotient(const FracIdeal& a, const FracIdeal& b) {
    auto s = snf(basis_change(a, b));
    QuotientData q;
    for (const auto& d : s.divisors) {
        if (d != 1) q.divisors.push_back(d);
        q.order *= d;
    }
    return q;
}

FiniteQuotient::FiniteQuotient(const FracIdeal& top, const FracIdeal& bottom) : top_(top), bottom_(bottom) {
    const std::size_t n = top.degree();
    auto s = snf(basis_change(top, bottom));
    std::vector<std::size_t> keep;
    order_ = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (s.divisors[i] != 1) {
            keep.push_back(i);
            divisors_.push_back(s.divisors[i]);
            order_ *= s.divisors[i];
        }
    right_ = IntMatrix(n, keep.size());
    right_inv_ = IntMatrix(keep.size(), n);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            right_(i, k) = s.right(i, keep[k]);
            right_inv_(k, i) = s.right_inverse(keep[k], i);
        }
    }
}

std::vector<Int> FiniteQuotient::coords_from_basis(const ZVec& u) const {
    auto w = row_times(u, right_);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = mod_nonneg(w[k], divisors_[k]);
    return w;
}

std::vector<Int> FiniteQuotient::coords(const AlgElement& x) const {
    auto u = top_.coordinates(x);
    if (!u) throw MathError("element outside the quotient's top lattice");
    return coords_from_basis(*u);
}

AlgElement FiniteQuotient::lift(const std::vector<Int>& c) const {
    const std::size_t n = top_.degree();
    ZVec u = row_times(c, right_inv_);
    AlgElement x(n);
    for (std::size_t j = 0; j < n; ++j) {
        Int s = 0;
        for (std::size_t i = 0; i <= j; ++i)
            if (u[i] != 0) s += u[i] * top_.basis()(i, j);
        x[j] = Rat(s, top_.denom());
        x[j].canonicalize();
    }
    return x;
}

nlohmann::json to_json(const FracIdeal& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < a.degree(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        for (std::size_t j = 0; j < a.degree(); ++j) r.push_back(a.basis()(i, j).get_str());
        rows.push_back(r);
    }
    return {{"denom", a.denom().get_str()}, {"basis", rows}};
}

FracIdeal fracideal_from_json(AlgebraPtr alg, const nlohmann::json& j) {
    const auto& rows = j.at("basis");
    IntMatrix m(rows.size(), alg->degree());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < alg->degree(); ++k) m(i, k) = Int(rows[i][k].get<std::string>());
    return FracIdeal::from_rows(std::move(alg), m, Int(j.at("denom").get<std::string>()));
}

}  // namespace cmorder
