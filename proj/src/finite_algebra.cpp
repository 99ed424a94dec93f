#include "cmorder/finite_algebra.hpp"

#include <algorithm>

namespace cmorder {

FpAlgebra::FpAlgebra(std::uint64_t p, std::size_t dim, std::vector<std::vector<FpVec>> table, FpVec one)
    : k_(p), dim_(dim), table_(std::move(table)), one_(std::move(one)) {}

FpVec FpAlgebra::basis(std::size_t i) const {
    FpVec v(dim_, 0);
    v[i] = 1;
    return v;
}

FpVec FpAlgebra::add(const FpVec& a, const FpVec& b) const {
    FpVec r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) r[i] = k_.add(a[i], b[i]);
    return r;
}

FpVec FpAlgebra::sub(const FpVec& a, const FpVec& b) const {
    FpVec r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) r[i] = k_.sub(a[i], b[i]);
    return r;
}

FpVec FpAlgebra::scale(const FpVec& a, std::uint64_t c) const {
    FpVec r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) r[i] = k_.mul(a[i], c);
    return r;
}

FpVec FpAlgebra::mul(const FpVec& a, const FpVec& b) const {
    FpVec r(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j] == 0) continue;
            std::uint64_t c = k_.mul(a[i], b[j]);
            const auto& t = table_[i][j];
            for (std::size_t l = 0; l < dim_; ++l)
                if (t[l]) r[l] = k_.add(r[l], k_.mul(c, t[l]));
        }
    }
    return r;
}

FpVec FpAlgebra::pow(FpVec a, const Int& e) const {
    FpVec r = one_;
    Int x = e;
    while (x > 0) {
        if (mpz_odd_p(x.get_mpz_t())) r = mul(r, a);
        x >>= 1;
        if (x > 0) a = mul(a, a);
    }
    return r;
}

bool FpAlgebra::is_zero(const FpVec& a) const {
    return std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
}

FpMatrix FpAlgebra::frobenius() const {
    FpMatrix m;
    Int p(static_cast<unsigned long>(k_.p));
    for (std::size_t i = 0; i < dim_; ++i) m.push_back(pow(basis(i), p));
    return m;
}

FpMatrix FpAlgebra::mul_matrix(const FpVec& a) const {
    FpMatrix m;
    for (std::size_t i = 0; i < dim_; ++i) m.push_back(mul(basis(i), a));
    return m;
}

FpVec row_apply(const FpVec& v, const FpMatrix& m, const PrimeField& k) {
    FpVec r(m.empty() ? 0 : m[0].size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = k.add(r[j], k.mul(v[i], m[i][j]));
    }
    return r;
}

namespace {

FpMatrix transpose(const FpMatrix& m, std::size_t cols) {
    FpMatrix t(cols, FpVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

FpMatrix matmul(const FpMatrix& a, const FpMatrix& b, const PrimeField& k) {
    FpMatrix c;
    for (const auto& row : a) c.push_back(row_apply(row, b, k));
    return c;
}

// {v : v * m = 0}
FpMatrix left_kernel(const FpMatrix& m, std::size_t dim, const PrimeField& k) {
    return kernel(transpose(m, dim), dim, k);
}

}  // namespace

FpSubspace nilradical(const FpAlgebra& a) {
    const std::size_t n = a.dim();
    const auto& k = a.field();
    FpMatrix f = a.frobenius();
    FpMatrix fk = f;
    unsigned long long pk = a.p();
    while (pk < n) {
        fk = matmul(fk, f, k);
        pk *= a.p();
    }
    return FpSubspace(n, a.p(), left_kernel(fk, n, k));
}

FpAlgebra quotient_algebra(const FpAlgebra& a, const FpSubspace& ideal, std::vector<std::size_t>& keep) {
    const std::size_t n = a.dim();
    std::vector<bool> pivot(n, false);
    for (const auto& b : ideal.basis()) {
        std::size_t c = 0;
        while (b[c] == 0) ++c;
        pivot[c] = true;
    }
    keep.clear();
    for (std::size_t i = 0; i < n; ++i)
        if (!pivot[i]) keep.push_back(i);
    const std::size_t m = keep.size();
    auto project = [&](const FpVec& v) {
        auto r = ideal.reduce(v);
        FpVec out(m);
        for (std::size_t i = 0; i < m; ++i) out[i] = r[keep[i]];
        return out;
    };
    std::vector<std::vector<FpVec>> table(m, std::vector<FpVec>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) table[i][j] = project(a.mul(a.basis(keep[i]), a.basis(keep[j])));
    return FpAlgebra(a.p(), m, std::move(table), project(a.one()));
}

std::vector<std::uint64_t> minimal_polynomial(const FpAlgebra& a, const FpVec& x, const FpVec& e) {
    const auto& k = a.field();
    std::vector<FpVec> powers{e};
    for (;;) {
        FpVec nxt = a.mul(powers.back(), x);
        powers.push_back(nxt);
        // Columns are the powers; look for a dependency.
        FpMatrix m(a.dim(), FpVec(powers.size()));
        for (std::size_t j = 0; j < powers.size(); ++j)
            for (std::size_t i = 0; i < a.dim(); ++i) m[i][j] = powers[j][i];
        auto ker = kernel(m, powers.size(), k);
        if (ker.empty()) continue;
        auto v = ker[0];
        auto lead = v.back();
        if (lead == 0) throw MathError("unexpected dependency in minimal polynomial");
        auto inv = k.inv(lead);
        for (auto& c : v) c = k.mul(c, inv);
        return v;
    }
}

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& g, const PrimeField& k) {
    trim(a);
    auto inv = k.inv(g.back());
    while (a.size() >= g.size()) {
        auto c = k.mul(a.back(), inv);
        std::size_t s = a.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i) a[s + i] = k.sub(a[s + i], k.mul(c, g[i]));
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, const PrimeField& k) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
    return r;
}

Poly poly_powmod(Poly base, Int e, const Poly& g, const PrimeField& k) {
    Poly r{1};
    base = poly_mod(base, g, k);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mod(poly_mul(r, base, k), g, k);
        e >>= 1;
        if (e > 0) base = poly_mod(poly_mul(base, base, k), g, k);
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, const PrimeField& k) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = poly_mod(a, b, k);
        std::swap(a, b);
    }
    if (!a.empty()) {
        auto inv = k.inv(a.back());
        for (auto& c : a) c = k.mul(c, inv);
    }
    return a;
}

Poly poly_div(Poly a, const Poly& g, const PrimeField& k) {
    trim(a);
    if (a.size() < g.size()) return {};
    Poly q(a.size() - g.size() + 1, 0);
    auto inv = k.inv(g.back());
    for (std::size_t s = q.size(); s-- > 0;) {
        auto c = k.mul(a[s + g.size() - 1], inv);
        q[s] = c;
        for (std::size_t i = 0; i < g.size(); ++i) a[s + i] = k.sub(a[s + i], k.mul(c, g[i]));
    }
    return q;
}

std::uint64_t eval(const Poly& g, std::uint64_t x, const PrimeField& k) {
    std::uint64_t r = 0;
    for (std::size_t i = g.size(); i-- > 0;) r = k.add(k.mul(r, x), g[i]);
    return r;
}

void roots_rec(const Poly& g, const PrimeField& k, std::mt19937_64& rng, std::vector<std::uint64_t>& out) {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        out.push_back(k.mul(k.neg(g[0]), k.inv(g[1])));
        return;
    }
    Int half = (Int(static_cast<unsigned long>(k.p)) - 1) / 2;
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::uint64_t a = rng() % k.p;
        Poly h = poly_powmod(Poly{a, 1}, half, g, k);
        if (h.empty()) h = {0};
        h[0] = k.sub(h[0], 1);
        Poly d = poly_gcd(g, h, k);
        if (d.size() > 1 && d.size() < g.size()) {
            roots_rec(d, k, rng, out);
            roots_rec(poly_div(g, d, k), k, rng, out);
            return;
        }
    }
    throw MathError("root splitting failed; polynomial may not split");
}

}  // namespace

std::vector<std::uint64_t> split_roots(const std::vector<std::uint64_t>& g0, const PrimeField& k,
                                       std::mt19937_64& rng) {
    Poly g = g0;
    trim(g);
    std::vector<std::uint64_t> out;
    if (k.p <= 4096) {
        for (std::uint64_t x = 0; x < k.p; ++x)
            if (eval(g, x, k) == 0) out.push_back(x);
    } else {
        roots_rec(g, k, rng, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FpVec> primitive_idempotents(const FpAlgebra& b, std::mt19937_64& rng) {
    const std::size_t n = b.dim();
    const auto& k = b.field();
    // Berlekamp subalgebra W = {x : x^p = x}.
    FpMatrix f = b.frobenius();
    for (std::size_t i = 0; i < n; ++i) f[i][i] = k.sub(f[i][i], 1);
    FpMatrix w = left_kernel(f, n, k);
    std::vector<FpVec> done, todo{b.one()};
    auto sub_dim = [&](const FpVec& e) {
        FpSubspace s(n, k.p);
        for (const auto& v : w) s.add(b.mul(e, v));
        return s.dim();
    };
    while (!todo.empty()) {
        FpVec e = todo.back();
        todo.pop_back();
        if (sub_dim(e) <= 1) {
            done.push_back(e);
            continue;
        }
        for (;;) {
            FpVec x = b.zero();
            for (const auto& v : w) x = b.add(x, b.scale(v, rng() % k.p));
            x = b.mul(e, x);
            auto g = minimal_polynomial(b, x, e);
            if (g.size() <= 2) continue;
            auto roots = split_roots(g, k, rng);
            if (roots.size() + 1 != g.size()) throw MathError("minimal polynomial does not split");
            for (std::size_t j = 0; j < roots.size(); ++j) {
                FpVec ej = e;
                for (std::size_t l = 0; l < roots.size(); ++l) {
                    if (l == j) continue;
                    FpVec factor = b.sub(x, b.scale(e, roots[l]));
                    ej = b.scale(b.mul(ej, factor), k.inv(k.sub(roots[j], roots[l])));
                }
                todo.push_back(ej);
            }
            break;
        }
    }
    return done;
}

}  // namespace cmorder
