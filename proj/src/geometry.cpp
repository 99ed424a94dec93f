#include "cmorder/geometry.hpp"

#include "cmorder/config.hpp"
#include "cmorder/order.hpp"

#include <cmath>

namespace cmorder {

namespace {

std::size_t bit_size(const AlgElement& x) {
    std::size_t b = 0;
    for (const auto& c : x)
        b = std::max(b, mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));
    return b;
}

Int round_to_int(const Real& x) {
    Int z;
    mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDN);
    return z;
}

}  // namespace

Embedding::Embedding(AlgebraPtr alg, unsigned precision) : alg_(std::move(alg)), prec_(std::max(64u, precision ? precision : root_precision())) {
    const auto roots = alg_->roots(prec_);
    const std::size_t n = alg_->degree();
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Complex> pw;
        Complex z(Real(1.0, prec_), Real(prec_));
        for (std::size_t j = 0; j < n; ++j) {
            pw.push_back(z);
            z = z * roots[k].z;
        }
        powers_.push_back(std::move(pw));
        if (roots[k].real) real_.push_back(k);
        else if (roots[k].z.im.sign() > 0) cplx_.push_back(k);
    }
}

std::vector<Complex> Embedding::conjugates(const AlgElement& x) const {
    std::vector<Real> c;
    for (const auto& q : x) c.emplace_back(q, prec_);
    std::vector<Complex> out;
    for (const auto& pw : powers_) {
        Complex s(prec_);
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j].is_zero()) continue;
            s.re += c[j] * pw[j].re;
            s.im += c[j] * pw[j].im;
        }
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

std::vector<Real> real_coords(const Embedding& emb, const AlgElement& x) {
    auto s = emb.conjugates(x);
    std::vector<Real> out;
    const mpfr_prec_t prec = s.empty() ? 64 : s[0].re.prec();
    Real r2 = sqrt(Real(2.0, prec));
    for (auto k : emb.real_roots()) out.push_back(s[k].re);
    for (auto k : emb.complex_roots()) {
        out.push_back(r2 * s[k].re);
        out.push_back(r2 * s[k].im);
    }
    return out;
}

Real dot(const std::vector<Real>& a, const std::vector<Real>& b) {
    Real s(a.empty() ? 64 : a[0].prec());
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<long double> Embedding::coords(const AlgElement& x) const {
    std::vector<long double> out;
    for (const auto& r : real_coords(*this, x)) out.push_back(r.to_ld());
    return out;
}

long double Embedding::t2(const AlgElement& x) const {
    auto c = real_coords(*this, x);
    return dot(c, c).to_ld();
}

ReducedBasis lll_reduce(const std::vector<AlgElement>& basis, const Embedding& emb0, long double delta) {
    const std::size_t n = basis.size();
    std::size_t bits = 0;
    for (const auto& b : basis) bits = std::max(bits, bit_size(b));
    const unsigned prec = static_cast<unsigned>(std::max<std::size_t>(128, 2 * bits + 64 + 8 * n));
    std::optional<Embedding> own;
    const Embedding* emb = &emb0;
    if (prec > 128) {
        own.emplace(emb0.algebra(), prec);
        emb = &*own;
    }
    std::vector<AlgElement> b = basis;
    std::vector<std::vector<Real>> v;
    for (const auto& x : b) v.push_back(real_coords(*emb, x));
    const mpfr_prec_t P = v.empty() || v[0].empty() ? 128 : v[0][0].prec();
    const Real half(0.5, P), dl(static_cast<double>(delta), P);

    std::vector<std::vector<Real>> mu(n, std::vector<Real>(n, Real(P)));
    std::vector<Real> bn(n, Real(P));
    std::vector<std::vector<Real>> star(n);
    auto gso = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            star[i] = v[i];
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(v[i], star[j]) / bn[j];
                for (std::size_t l = 0; l < star[i].size(); ++l) star[i][l] -= mu[i][j] * star[j][l];
            }
            bn[i] = dot(star[i], star[i]);
        }
    };
    gso();
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < n) {
        if (++guard > 100000) throw MathError("LLL did not converge");
        for (std::size_t j = k; j-- > 0;) {
            if (!(abs(mu[k][j]) > half)) continue;
            Int q = round_to_int(mu[k][j]);
            Rat qr(q);
            for (std::size_t l = 0; l < b[k].size(); ++l) b[k][l] -= qr * b[j][l];
            Real qq(q, P);
            for (std::size_t l = 0; l < v[k].size(); ++l) v[k][l] -= qq * v[j][l];
            for (std::size_t l = 0; l < j; ++l) mu[k][l] -= qq * mu[j][l];
            mu[k][j] -= qq;
        }
        if (bn[k] < (dl - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            std::swap(b[k], b[k - 1]);
            std::swap(v[k], v[k - 1]);
            gso();
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            ++k;
        }
    }
    ReducedBasis out;
    out.basis = b;
    v.clear();
    for (const auto& x : b) v.push_back(real_coords(*emb, x));
    out.gram.assign(n, std::vector<long double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) out.gram[i][j] = out.gram[j][i] = dot(v[i], v[j]).to_ld();
    return out;
}

AlgElement combine(const ReducedBasis& rb, const std::vector<long long>& x) {
    AlgElement e(rb.basis[0].size(), Rat(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 0) continue;
        Rat cj(static_cast<long>(x[j]));
        for (std::size_t l = 0; l < e.size(); ++l) e[l] += cj * rb.basis[j][l];
    }
    return e;
}

bool enumerate_short(const ReducedBasis& rb, long double bound, std::size_t limit,
                     const std::function<bool(const AlgElement&)>& visit) {
    return enumerate_short_coeffs(rb, bound, limit,
                                  [&](const std::vector<long long>& x) { return visit(combine(rb, x)); });
}

bool enumerate_short_coeffs(const ReducedBasis& rb, long double bound, std::size_t limit,
                            const std::function<bool(const std::vector<long long>&)>& visit) {
    const std::size_t n = rb.basis.size();
    if (n == 0) return true;
    // Quadratic form as sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
    std::vector<std::vector<long double>> q = rb.gram;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    const long double c = bound * (1 + 1e-9L) + 1e-9L;
    std::vector<long long> x(n, 0);
    std::vector<long double> rem(n + 1, 0);
    rem[n] = c;
    std::size_t produced = 0;
    bool stopped = false, limited = false;

    std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool higher_zero) {
        if (stopped) return;
        long double center = 0;
        for (std::size_t j = i + 1; j < n; ++j) center -= q[i][j] * static_cast<long double>(x[j]);
        long double r = rem[i + 1] / q[i][i];
        if (r < 0) return;
        long double w = std::sqrt(r);
        long long lo = static_cast<long long>(std::ceil(center - w));
        long long hi = static_cast<long long>(std::floor(center + w));
        if (higher_zero) lo = std::max(lo, 0LL);
        for (long long t = lo; t <= hi && !stopped; ++t) {
            long double d = static_cast<long double>(t) - center;
            long double used = q[i][i] * d * d;
            if (used > rem[i + 1]) continue;
            x[i] = t;
            rem[i] = rem[i + 1] - used;
            bool zero_here = higher_zero && t == 0;
            if (i == 0) {
                if (zero_here) continue;
                if (produced >= limit) {
                    stopped = limited = true;
                    break;
                }
                ++produced;
                if (!visit(x)) stopped = true;
            } else {
                rec(i - 1, zero_here);
            }
        }
        x[i] = 0;
    };
    rec(n - 1, true);
    return !limited;
}

std::vector<AlgElement> projected_basis(const FracIdeal& l, const AlgElement& e) {
    const auto& alg = l.algebra();
    Int d = l.denom();
    std::vector<ZVec> rows;
    Int den = 1;
    std::vector<AlgElement> prods;
    for (const auto& b : l.basis_elements()) prods.push_back(alg->mul(b, e));
    for (const auto& p : prods) den = lcm(den, common_denominator(p));
    IntMatrix m;
    for (const auto& p : prods) {
        ZVec r;
        for (const auto& c : p) r.push_back(Int(c * den));
        m.append_row(r);
    }
    IntMatrix h = hnf_basis(m);
    std::vector<AlgElement> out;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        AlgElement x;
        for (std::size_t j = 0; j < h.cols(); ++j) x.push_back(Rat(h(i, j), den));
        for (auto& c : x) c.canonicalize();
        out.push_back(std::move(x));
    }
    return out;
}

namespace {

Rat trace_gram_det(const AlgebraPtr& alg, const std::vector<AlgElement>& b) {
    RatMatrix g(b.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) g(i, j) = g(j, i) = alg->trace(alg->mul(b[i], b[j]));
    return determinant(g);
}

Rat rational_sqrt(const Rat& x) {
    Int n = x.get_num(), d = x.get_den();
    Int rn = sqrt(abs(n)), rd = sqrt(d);
    if (rn * rn != abs(n) || rd * rd != d) throw MathError("index ratio is not a square");
    return Rat(rn, rd);
}

}  // namespace

Rat component_index(const FracIdeal& b, const FracIdeal& a, const AlgElement& e) {
    const auto& alg = a.algebra();
    Rat num = trace_gram_det(alg, projected_basis(a, e));
    Rat den = trace_gram_det(alg, projected_basis(b, e));
    Rat r = num / den;
    return rational_sqrt(abs(r));
}

namespace {

std::vector<Component> compute_components(const AlgebraPtr& alg) {
    const std::size_t n = alg->degree();
    Order ok = maximal_order(alg);
    Embedding emb(alg);
    auto rb = lll_reduce(ok.lattice().basis_elements(), emb);
    std::vector<AlgElement> idem;
    auto is_idem = [&](const AlgElement& x) { return alg->mul(x, x) == x; };
    enumerate_short(rb, static_cast<long double>(n) + 0.5L, 1u << 22, [&](const AlgElement& x) {
        AlgElement y = x;
        for (auto& c : y) c = -c;
        if (is_idem(x)) idem.push_back(x);
        else if (is_idem(y)) idem.push_back(y);
        return true;
    });
    std::vector<AlgElement> prim;
    for (const auto& e : idem) {
        bool primitive = true;
        for (const auto& f : idem)
            if (f != e && alg->mul(e, f) == f) primitive = false;
        if (primitive) prim.push_back(e);
    }
    std::sort(prim.begin(), prim.end());
    // Sanity: the primitive idempotents sum to 1.
    AlgElement total(n, Rat(0));
    for (const auto& e : prim)
        for (std::size_t i = 0; i < n; ++i) total[i] += e[i];
    if (total != alg->one()) throw MathError("idempotent decomposition incomplete");

    std::vector<Component> out;
    for (const auto& e : prim) {
        Component c;
        c.idempotent = e;
        c.degree = static_cast<std::size_t>(alg->trace(e).get_num().get_ui());
        auto s = emb.conjugates(e);
        c.real_places = c.complex_places = 0;
        for (auto k : emb.real_roots())
            if (s[k].re.to_d() > 0.5) ++c.real_places;
        for (auto k : emb.complex_roots())
            if (s[k].re.to_d() > 0.5) ++c.complex_places;
        if (c.real_places + 2 * c.complex_places != c.degree) throw MathError("component signature mismatch");
        Rat d = trace_gram_det(alg, projected_basis(ok.lattice(), e));
        if (d.get_den() != 1) throw MathError("component discriminant not integral");
        c.discriminant = d.get_num();
        long double m = 1;
        for (std::size_t k = 1; k <= c.degree; ++k) m *= static_cast<long double>(k) / static_cast<long double>(c.degree);
        m *= std::pow(4.0L / 3.14159265358979323846L, static_cast<long double>(c.complex_places));
        m *= std::sqrt(std::fabs(static_cast<long double>(c.discriminant.get_d())));
        c.minkowski_bound = m;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

const std::vector<Component>& algebra_components(const AlgebraPtr& alg) {
    auto p = alg->memo<std::vector<Component>>("components", [&] {
        return std::make_shared<const std::vector<Component>>(compute_components(alg));
    });
    return *p;
}

std::size_t unit_rank(const AlgebraPtr& alg) {
    std::size_t r = 0;
    for (const auto& c : algebra_components(alg)) r += c.unit_rank();
    return r;
}

}  // namespace cmorder
