#include "cmorder/linalg.hpp"

#include <algorithm>
#include <utility>

namespace cmorder {

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int mod_nonneg(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

unsigned valuation(Int a, const Int& p) {
    if (a == 0) throw MathError("valuation of zero");
    return static_cast<unsigned>(mpz_remove(a.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

std::string to_string(const Int& z) { return z.get_str(); }

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw MathError("matrix shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw MathError("matrix shape mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

ZVec row_times(const ZVec& v, const IntMatrix& m) {
    if (v.size() != m.rows()) throw MathError("vector/matrix shape mismatch");
    ZVec out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
    RatMatrix a = m;
    const std::size_t n = a.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(p, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw MathError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return std::nullopt;
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(c, j), a(p, j));
                std::swap(inv(c, j), inv(p, j));
            }
        Rat piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

namespace {

void row_axpy(IntMatrix& m, std::size_t dst, const Int& q, std::size_t src) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0) m(dst, j) += q * m(src, j);
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// rows (a, b) <- (s*a + t*b, u*a + v*b)
void row_combine(IntMatrix& m, std::size_t a, std::size_t b, const Int& s, const Int& t,
                 const Int& u, const Int& v) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Int x = m(a, j), y = m(b, j);
        m(a, j) = s * x + t * y;
        m(b, j) = u * x + v * y;
    }
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    HnfResult res;
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    std::vector<std::size_t> pivcols;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        swap_rows(a, r, p);
        swap_rows(u, r, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a(i, c) == 0) continue;
            Int g, s, t;
            xgcd(a(r, c), a(i, c), g, s, t);
            Int x = a(r, c) / g, y = a(i, c) / g;
            row_combine(a, r, i, s, t, -y, x);
            row_combine(u, r, i, s, t, -y, x);
        }
        if (a(r, c) < 0) {
            for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(a(i, c), a(r, c));
            if (q != 0) {
                row_axpy(a, i, -q, r);
                row_axpy(u, i, -q, r);
            }
        }
        pivcols.push_back(c);
        ++r;
    }
    res.hnf = std::move(a);
    res.transform = std::move(u);
    res.rank = r;
    return res;
}

IntMatrix hnf_basis(const IntMatrix& gens) {
    // Transform-free variant of `hnf`.
    IntMatrix a = gens;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        swap_rows(a, r, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a(i, c) == 0) continue;
            Int g, s, t;
            xgcd(a(r, c), a(i, c), g, s, t);
            Int x = a(r, c) / g, y = a(i, c) / g;
            row_combine(a, r, i, s, t, -y, x);
        }
        if (a(r, c) < 0)
            for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(a(i, c), a(r, c));
            if (q != 0) row_axpy(a, i, -q, r);
        }
        ++r;
    }
    IntMatrix out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
    return out;
}

IntMatrix hnf_mod(const IntMatrix& gens, const Int& modulus) {
    if (modulus == 0) throw MathError("hnf_mod needs a nonzero modulus");
    const Int D = abs(modulus);
    const std::size_t n = gens.cols();
    std::vector<ZVec> pool;
    pool.reserve(gens.rows() + n);
    for (std::size_t i = 0; i < gens.rows(); ++i) {
        ZVec v = gens.row(i);
        bool nz = false;
        for (auto& x : v) {
            x = mod_nonneg(x, D);
            nz = nz || x != 0;
        }
        if (nz) pool.push_back(std::move(v));
    }
    IntMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        // Fold every pool row with a nonzero entry in column j into h.
        ZVec h(n, 0);
        bool have = false;
        std::vector<ZVec> next;
        next.reserve(pool.size() + 1);
        for (auto& row : pool) {
            if (row[j] == 0) {
                next.push_back(std::move(row));
                continue;
            }
            if (!have) {
                h = std::move(row);
                have = true;
                continue;
            }
            Int g, s, t;
            xgcd(h[j], row[j], g, s, t);
            Int x = h[j] / g, y = row[j] / g;
            ZVec nh(n), nr(n);
            bool nz = false;
            for (std::size_t k = j; k < n; ++k) {
                nh[k] = mod_nonneg(s * h[k] + t * row[k], D);
                nr[k] = mod_nonneg(x * row[k] - y * h[k], D);
                nz = nz || nr[k] != 0;
            }
            nh[j] = g;
            h = std::move(nh);
            if (nz) next.push_back(std::move(nr));
        }
        // h[j] = g0; pivot g = gcd(g0, D).
        Int g, s, t;
        xgcd(h[j], D, g, s, t);
        Int cof = D / g;
        ZVec w(n, 0), piv(n, 0);
        bool wnz = false;
        for (std::size_t k = j + 1; k < n; ++k) {
            piv[k] = mod_nonneg(s * h[k], D);
            w[k] = mod_nonneg(cof * h[k], D);
            wnz = wnz || w[k] != 0;
        }
        piv[j] = g;
        if (wnz) next.push_back(std::move(w));
        out.set_row(j, piv);
        pool = std::move(next);
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            Int q = floor_div(out(i, j), out(j, j));
            if (q != 0) row_axpy(out, i, -q, j);
        }
    return out;
}

SnfResult snf(const IntMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    IntMatrix a = m;
    IntMatrix L = IntMatrix::identity(R);
    IntMatrix Q = IntMatrix::identity(C);
    IntMatrix Qi = IntMatrix::identity(C);

    auto col_axpy = [&](std::size_t dst, const Int& q, std::size_t src) {
        // column dst += q * column src
        for (std::size_t i = 0; i < R; ++i) a(i, dst) += q * a(i, src);
        for (std::size_t i = 0; i < C; ++i) Q(i, dst) += q * Q(i, src);
        for (std::size_t j = 0; j < C; ++j) Qi(src, j) -= q * Qi(dst, j);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t i = 0; i < R; ++i) std::swap(a(i, x), a(i, y));
        for (std::size_t i = 0; i < C; ++i) std::swap(Q(i, x), Q(i, y));
        swap_rows(Qi, x, y);
    };
    auto rswap = [&](std::size_t x, std::size_t y) {
        swap_rows(a, x, y);
        swap_rows(L, x, y);
    };
    auto raxpy = [&](std::size_t dst, const Int& q, std::size_t src) {
        row_axpy(a, dst, q, src);
        row_axpy(L, dst, q, src);
    };

    const std::size_t k = std::min(R, C);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            std::size_t bi = R, bj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (a(i, j) != 0 && (bi == R || mpz_cmpabs(a(i, j).get_mpz_t(), a(bi, bj).get_mpz_t()) < 0)) {
                        bi = i;
                        bj = j;
                    }
            if (bi == R) break;
            rswap(t, bi);
            col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                raxpy(i, -q, t);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                col_axpy(j, -q, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility of the remaining block by the pivot.
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == R) break;
            raxpy(t, 1, bad);
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < C; ++j) a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < R; ++j) L(t, j) = -L(t, j);
        }
    }
    SnfResult res;
    res.divisors.resize(k);
    for (std::size_t t = 0; t < k; ++t) res.divisors[t] = a(t, t);
    res.left = std::move(L);
    res.right = std::move(Q);
    res.right_inverse = std::move(Qi);
    return res;
}

std::optional<QVec> solve_exact(const RatMatrix& a, const QVec& b) {
    const std::size_t R = a.rows(), C = a.cols();
    if (b.size() != R) throw MathError("solve_exact shape mismatch");
    RatMatrix m(R, C + 1);
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < C; ++j) m(i, j) = a(i, j);
        m(i, C) = b[i];
    }
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && m(p, c) == 0) ++p;
        if (p == R) return std::nullopt;  // not full column rank
        if (p != r)
            for (std::size_t j = 0; j <= C; ++j) std::swap(m(r, j), m(p, j));
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j <= C; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j <= C; ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (r < C) return std::nullopt;
    for (std::size_t i = r; i < R; ++i)
        if (m(i, C) != 0) return std::nullopt;
    QVec x(C);
    for (std::size_t i = 0; i < C; ++i) x[i] = m(i, C);
    return x;
}

std::optional<QVec> solve_exact(const IntMatrix& a, const QVec& b) {
    return solve_exact(to_rational(a), b);
}

Int common_denominator(const QVec& v) {
    Int d = 1;
    for (const auto& x : v) d = lcm(d, x.get_den());
    return d;
}

Int common_denominator(const RatMatrix& m) { return common_denominator(m.data()); }

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw MathError("inverse of zero in F_p");
    // Extended Euclid on signed 128-bit values.
    __int128 t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<Elem>(t);
}

PrimeField::Elem PrimeField::from(const Int& z) const {
    Int r = mod_nonneg(z, Int(static_cast<unsigned long>(p)));
    return static_cast<Elem>(r.get_ui());
}

FpSubspace::FpSubspace(std::size_t dim, std::uint64_t p, const FpMatrix& gens) : n_(dim), k_(p) {
    for (const auto& g : gens) add(g);
}

std::vector<std::uint64_t> FpSubspace::reduce(std::vector<std::uint64_t> v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        auto c = v[pivots_[i]];
        if (c == 0) continue;
        const auto& b = basis_[i];
        for (std::size_t j = pivots_[i]; j < n_; ++j) v[j] = k_.sub(v[j], k_.mul(c, b[j]));
    }
    return v;
}

bool FpSubspace::contains(const std::vector<std::uint64_t>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; });
}

bool FpSubspace::add(const std::vector<std::uint64_t>& v) {
    auto r = reduce(v);
    std::size_t c = 0;
    while (c < n_ && r[c] == 0) ++c;
    if (c == n_) return false;
    auto inv = k_.inv(r[c]);
    for (auto& x : r) x = k_.mul(x, inv);
    for (auto& b : basis_) {
        auto f = b[c];
        if (f == 0) continue;
        for (std::size_t j = c; j < n_; ++j) b[j] = k_.sub(b[j], k_.mul(f, r[j]));
    }
    auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), c) -
                                        pivots_.begin());
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), c);
    return true;
}

}  // namespace cmorder
