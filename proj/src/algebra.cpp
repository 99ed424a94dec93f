#include "cmorder/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cmorder {

std::vector<Int> parse_polynomial(const std::string& text) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw MathError("empty coefficient in polynomial");
        item = item.substr(b, e - b + 1);
        if (item[0] == '+') item = item.substr(1);
        Int c;
        if (item.empty() || c.set_str(item, 10) != 0) throw MathError("bad coefficient '" + item + "'");
        out.push_back(c);
    }
    if (out.size() < 2) throw MathError("polynomial must have degree at least 1");
    if (out.back() != 1) throw MathError("polynomial must be monic with trailing coefficient 1");
    return out;
}

std::string format_polynomial(const std::vector<Int>& coeffs) {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) s += ',';
        s += coeffs[i].get_str();
    }
    return s;
}

namespace {

void trim(std::vector<Rat>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a <- a mod b
        while (a.size() >= b.size()) {
            Rat q = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
            a.pop_back();
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

std::vector<Int> poly_derivative(const std::vector<Int>& f) {
    std::vector<Int> d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
    return d;
}

Int resultant(const std::vector<Int>& a, const std::vector<Int>& b) {
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    IntMatrix s(m + n, m + n);
    // Rows hold descending coefficients, shifted.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) s(i, i + j) = a[m - j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) s(n + i, i + j) = b[n - j];
    return determinant(s);
}

AlgebraPtr EtaleAlgebra::make(std::vector<Int> coeffs) {
    if (coeffs.size() < 2) throw MathError("polynomial must have degree at least 1");
    if (coeffs.back() != 1) throw MathError("polynomial must be monic");
    std::vector<Rat> f(coeffs.begin(), coeffs.end());
    auto df = poly_derivative(coeffs);
    auto g = poly_gcd(f, std::vector<Rat>(df.begin(), df.end()));
    if (g.size() != 1) throw MathError("polynomial is not squarefree; the algebra is not etale");
    return std::make_shared<const EtaleAlgebra>(Private{}, std::move(coeffs));
}

EtaleAlgebra::EtaleAlgebra(Private, std::vector<Int> coeffs) : n_(coeffs.size() - 1), f_(std::move(coeffs)) {
    const std::size_t n = n_;
    // pi^n = -sum f_i pi^i, then multiply by pi repeatedly.
    if (n >= 2) {
        ZVec cur(n);
        for (std::size_t i = 0; i < n; ++i) cur[i] = -f_[i];
        reduce_.push_back(cur);
        for (std::size_t k = 1; k + 1 < n; ++k) {
            ZVec nxt(n);
            Int top = cur[n - 1];
            for (std::size_t i = n - 1; i > 0; --i) nxt[i] = cur[i - 1];
            nxt[0] = 0;
            for (std::size_t i = 0; i < n; ++i) nxt[i] -= top * f_[i];
            reduce_.push_back(nxt);
            cur = std::move(nxt);
        }
    }
    // Newton's identities for the power sums of the roots.
    traces_.assign(2 * n - 1, 0);
    traces_[0] = static_cast<unsigned long>(n);
    for (std::size_t k = 1; k <= 2 * n - 2; ++k) {
        Int s = 0;
        for (std::size_t i = 1; i <= std::min(k, n); ++i) {
            // coefficient a_{n-i} multiplies p_{k-i}; for k = i use k*a_{n-k}
            if (i == k) s += static_cast<unsigned long>(k) * f_[n - i];
            else s += f_[n - i] * traces_[k - i];
        }
        traces_[k] = -s;
    }
    gram_ = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram_(i, j) = traces_[i + j];
    disc_ = determinant(gram_);
    if (disc_ == 0) throw MathError("degenerate trace form");
    gram_inv_ = *cmorder::inverse(to_rational(gram_));
}

template <class T>
std::vector<T> EtaleAlgebra::reduce_product(std::vector<T> prod) const {
    for (std::size_t k = n_; k < prod.size(); ++k) {
        if (prod[k] == 0) continue;
        const auto& r = reduce_[k - n_];
        for (std::size_t i = 0; i < n_; ++i)
            if (r[i] != 0) prod[i] += prod[k] * r[i];
    }
    prod.resize(n_);
    return prod;
}

AlgElement EtaleAlgebra::one() const {
    AlgElement e(n_);
    e[0] = 1;
    return e;
}

AlgElement EtaleAlgebra::gen() const {
    AlgElement e(n_);
    if (n_ == 1) e[0] = -f_[0];
    else e[1] = 1;
    return e;
}

AlgElement EtaleAlgebra::mul(const AlgElement& a, const AlgElement& b) const {
    std::vector<Rat> prod(2 * n_ - 1);
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    return reduce_product(std::move(prod));
}

ZVec EtaleAlgebra::mul(const ZVec& a, const ZVec& b) const {
    std::vector<Int> prod(2 * n_ - 1);
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    return reduce_product(std::move(prod));
}

AlgElement EtaleAlgebra::pow(const AlgElement& a, unsigned e) const {
    AlgElement r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

Rat EtaleAlgebra::trace(const AlgElement& a) const {
    Rat t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += a[i] * traces_[i];
    return t;
}

Int EtaleAlgebra::trace(const ZVec& a) const {
    Int t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += a[i] * traces_[i];
    return t;
}

RatMatrix EtaleAlgebra::regular_rep(const AlgElement& a) const {
    RatMatrix m(n_, n_);
    AlgElement cur = a, x = gen();
    for (std::size_t i = 0; i < n_; ++i) {
        m.set_row(i, cur);
        if (i + 1 < n_) cur = mul(cur, x);
    }
    return m;
}

IntMatrix EtaleAlgebra::regular_rep(const ZVec& a) const {
    IntMatrix m(n_, n_);
    ZVec cur = a, x(n_);
    if (n_ == 1) x[0] = -f_[0];
    else x[1] = 1;
    for (std::size_t i = 0; i < n_; ++i) {
        m.set_row(i, cur);
        if (i + 1 < n_) cur = mul(cur, x);
    }
    return m;
}

Rat EtaleAlgebra::norm(const AlgElement& a) const { return determinant(regular_rep(a)); }

std::optional<AlgElement> EtaleAlgebra::inverse(const AlgElement& a) const {
    auto r = regular_rep(a).transpose();
    return solve_exact(r, one());
}

std::vector<Rat> EtaleAlgebra::charpoly(const AlgElement& a) const {
    // Power sums s_k = Tr(a^k) and Newton's identities.
    std::vector<Rat> s(n_ + 1);
    AlgElement p = one();
    for (std::size_t k = 1; k <= n_; ++k) {
        p = mul(p, a);
        s[k] = trace(p);
    }
    std::vector<Rat> e(n_ + 1);
    e[0] = 1;
    for (std::size_t k = 1; k <= n_; ++k) {
        Rat acc = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            Rat term = e[k - i] * s[i];
            if (i % 2 == 1) acc += term;
            else acc -= term;
        }
        e[k] = acc / static_cast<unsigned long>(k);
    }
    // x^n - e1 x^{n-1} + e2 x^{n-2} - ...
    std::vector<Rat> c(n_ + 1);
    for (std::size_t k = 0; k <= n_; ++k) c[n_ - k] = (k % 2 == 0) ? e[k] : Rat(-e[k]);
    return c;
}

namespace {

// Horner evaluation of f and f' at z.
void eval(const std::vector<Int>& f, const Complex& z, mpfr_prec_t prec, Complex& fz, Complex& dfz) {
    fz = Complex(Real(f.back(), prec), Real(prec));
    dfz = Complex(prec);
    for (std::size_t i = f.size() - 1; i-- > 0;) {
        dfz = dfz * z + fz;
        fz = fz * z;
        fz.re += Real(f[i], prec);
    }
}

}  // namespace

std::vector<ComplexRoot> EtaleAlgebra::complex_roots(unsigned precision) const {
    if (precision < 64) throw RootError("precision must be at least 64 bits");
    const mpfr_prec_t P = precision;
    const std::size_t n = n_;
    std::vector<ComplexRoot> out;
    if (n == 1) {
        ComplexRoot r{Complex(Real(Int(-f_[0]), P), Real(P)), Real(P), true};
        out.push_back(std::move(r));
        return out;
    }
    // Cauchy bound for the initial circle.
    Real bound(1.0, P);
    for (std::size_t i = 0; i < n; ++i) {
        Real c = abs(Real(f_[i], P)) + Real(1.0, P);
        if (bound < c) bound = c;
    }
    std::vector<Complex> z;
    for (std::size_t k = 0; k < n; ++k) {
        double ang = 6.283185307179586 * (static_cast<double>(k) + 0.25) / static_cast<double>(n) + 0.4;
        Real r = bound * Real(0.5, P);
        z.emplace_back(r * Real(std::cos(ang), P), r * Real(std::sin(ang), P));
    }
    const Real tol = pow2(-static_cast<long>(P) + 8, P);
    Complex fz(P), dfz(P);
    for (int iter = 0; iter < 2000; ++iter) {
        bool done = true;
        for (std::size_t i = 0; i < n; ++i) {
            eval(f_, z[i], P, fz, dfz);
            if (dfz.norm().is_zero()) {
                z[i].re += pow2(-20, P);
                done = false;
                continue;
            }
            Complex w = fz / dfz;
            Complex s(P);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = z[i] - z[j];
                if (d.norm().is_zero()) d.re = pow2(-static_cast<long>(P) / 2, P);
                s += Complex(Real(1.0, P), Real(P)) / d;
            }
            Complex denom = Complex(Real(1.0, P), Real(P)) - w * s;
            Complex step = denom.norm().is_zero() ? w : w / denom;
            z[i] -= step;
            Real scale = z[i].modulus() + Real(1.0, P);
            if (!(step.modulus() <= tol * scale)) done = false;
        }
        if (done && iter > 2) break;
    }
    // Inclusion radii n|f(z_i)| / prod |z_i - z_j| with a rounding allowance.
    std::vector<Real> rad;
    for (std::size_t i = 0; i < n; ++i) {
        eval(f_, z[i], P, fz, dfz);
        Real mag(P);
        Real zm = z[i].modulus();
        Real pw(1.0, P);
        for (std::size_t k = 0; k <= n; ++k) {
            mag += abs(Real(f_[k], P)) * pw;
            pw *= zm;
        }
        Real fabs = fz.modulus() + mag * pow2(-static_cast<long>(P) + 16, P);
        Real prod(1.0, P);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) prod *= (z[i] - z[j]).modulus();
        if (prod.is_zero()) throw RootError("coincident root approximations");
        rad.push_back(Real(static_cast<double>(n), P) * fabs / prod);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!((rad[i] + rad[j]) < (z[i] - z[j]).modulus()))
                throw RootError("root discs overlap at " + std::to_string(precision) + " bits");
    // Real roots and conjugate pairing.
    std::vector<bool> is_real(n, false);
    std::vector<std::size_t> partner(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex c(z[i].re, -z[i].im);
        std::size_t hit = n;
        int hits = 0;
        for (std::size_t j = 0; j < n; ++j)
            if ((c - z[j]).modulus() <= rad[i] + rad[j]) {
                hit = j;
                ++hits;
            }
        if (hits != 1) throw RootError("conjugate pairing not certified");
        if (hit == i) is_real[i] = true;
        else partner[i] = hit;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (is_real[i]) z[i].im = Real(P);
        else if (partner[i] > i) {
            z[partner[i]].re = z[i].re;
            z[partner[i]].im = -z[i].im;
            Real r = rad[i] < rad[partner[i]] ? rad[partner[i]] : rad[i];
            rad[i] = r;
            rad[partner[i]] = r;
        }
    }
    for (std::size_t i = 0; i < n; ++i) out.push_back(ComplexRoot{z[i], rad[i], is_real[i]});
    std::sort(out.begin(), out.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
        if (mpfr_cmp(a.z.re.get(), b.z.re.get()) != 0) return a.z.re < b.z.re;
        return a.z.im < b.z.im;
    });
    return out;
}

const std::vector<ComplexRoot>& EtaleAlgebra::roots(unsigned precision) const {
    std::lock_guard<std::mutex> g(root_mutex_);
    if (roots_prec_ >= precision && !roots_.empty()) return roots_;
    unsigned p = std::max(64u, precision);
    for (; p <= 65536; p *= 2) {
        try {
            roots_ = complex_roots(p);
            roots_prec_ = p;
            return roots_;
        } catch (const RootError&) {
        }
    }
    throw RootError("could not certify the roots of " + poly_string());
}

std::pair<std::size_t, std::size_t> EtaleAlgebra::signature() const {
    const auto& r = roots();
    std::size_t real = 0;
    for (const auto& x : r) real += x.real ? 1 : 0;
    return {real, (n_ - real) / 2};
}

}  // namespace cmorder
