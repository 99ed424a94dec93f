#pragma once

// Exact integer/rational matrices, Hermite and Smith normal forms, exact
// solving, and linear algebra over prime fields.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmorder {

using Int = mpz_class;
using Rat = mpq_class;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

/// Raised for inputs that violate a documented precondition.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return {};
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw MathError("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    void set_row(std::size_t i, const std::vector<T>& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }
    void append_row(const std::vector<T>& v) {
        if (rows_ == 0) cols_ = v.size();
        if (v.size() != cols_) throw MathError("row length mismatch");
        a_.insert(a_.end(), v.begin(), v.end());
        ++rows_;
    }
    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    const std::vector<T>& data() const { return a_; }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix to_rational(const IntMatrix& m);
ZVec row_times(const ZVec& v, const IntMatrix& m);

Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Row-style Hermite normal form. `hnf` has the same shape as the input: the
/// first `rank` rows are nonzero with strictly increasing pivot columns,
/// positive pivots and entries above each pivot reduced into [0, pivot); the
/// remaining rows are zero. `transform` is unimodular with transform * m = hnf.
struct HnfResult {
    IntMatrix hnf;
    IntMatrix transform;
    std::size_t rank = 0;
};
HnfResult hnf(const IntMatrix& m);

/// HNF of a full-rank lattice given by generator rows, computed modulo D.
/// Requires D != 0 and D * Z^n contained in the row span. Returns the n x n
/// basis in the same canonical form as `hnf`.
IntMatrix hnf_mod(const IntMatrix& gens, const Int& modulus);

/// HNF basis (rank rows only) of the row span, no transform.
IntMatrix hnf_basis(const IntMatrix& gens);

struct SnfResult {
    std::vector<Int> divisors;  ///< d_1 | d_2 | ... ; length min(rows, cols)
    IntMatrix left;             ///< left * m * right = diag(divisors)
    IntMatrix right;
    IntMatrix right_inverse;
};
SnfResult snf(const IntMatrix& m);

/// x with a * x = b (column convention) or std::nullopt when the system is
/// singular or inconsistent.
std::optional<QVec> solve_exact(const IntMatrix& a, const QVec& b);
std::optional<QVec> solve_exact(const RatMatrix& a, const QVec& b);

/// Least common multiple of the denominators.
Int common_denominator(const QVec& v);
Int common_denominator(const RatMatrix& m);

// ---------------------------------------------------------------------------
// Prime fields

struct PrimeField {
    using Elem = std::uint64_t;
    std::uint64_t p;

    explicit PrimeField(std::uint64_t prime) : p(prime) {}
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem inv(Elem a) const;
    Elem from(const Int& z) const;
    bool is_zero(Elem a) const { return a == 0; }
};

template <class Field>
using FieldMatrix = std::vector<std::vector<typename Field::Elem>>;

/// Reduced row echelon form in place, returns pivot columns.
template <class Field>
std::vector<std::size_t> row_reduce(FieldMatrix<Field>& m, const Field& k) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && k.is_zero(m[piv][c])) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        auto inv = k.inv(m[r][c]);
        for (auto& x : m[r]) x = k.mul(x, inv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || k.is_zero(m[i][c])) continue;
            auto f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = k.sub(m[i][j], k.mul(f, m[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

/// Basis of the right null space {v : m v = 0}; `cols` is needed when m has
/// no rows.
template <class Field>
FieldMatrix<Field> kernel(FieldMatrix<Field> m, std::size_t cols, const Field& k) {
    auto pivots = row_reduce(m, k);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    FieldMatrix<Field> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename Field::Elem> v(cols, k.zero());
        v[free] = k.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(m[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

using FpMatrix = FieldMatrix<PrimeField>;

inline FpMatrix ff_kernel(const FpMatrix& m, std::size_t cols, const PrimeField& k) {
    return kernel(m, cols, k);
}

/// An F_p-subspace of F_p^n kept in reduced echelon form.
class FpSubspace {
public:
    FpSubspace(std::size_t dim, std::uint64_t p) : n_(dim), k_(p) {}
    FpSubspace(std::size_t dim, std::uint64_t p, const FpMatrix& gens);

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const FpMatrix& basis() const { return basis_; }
    const PrimeField& field() const { return k_; }

    /// Canonical representative of v modulo the subspace.
    std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> v) const;
    bool contains(const std::vector<std::uint64_t>& v) const;
    /// Adds v; returns true when the dimension grew.
    bool add(const std::vector<std::uint64_t>& v);

private:
    std::size_t n_;
    PrimeField k_;
    FpMatrix basis_;
    std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------
// Integer helpers

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
/// g = gcd(a, b) = s*a + t*b with g >= 0.
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t);
/// Floor division and nonnegative remainder.
Int floor_div(const Int& a, const Int& b);
Int mod_nonneg(const Int& a, const Int& m);
/// Exponent of p in |a| (a != 0).
unsigned valuation(Int a, const Int& p);
std::string to_string(const Int& z);

}  // namespace cmorder
