#pragma once

// The algebra K = Q[x]/(f) for a monic squarefree integral f, with elements in
// the power basis 1, pi, ..., pi^(n-1).

#include "cmorder/linalg.hpp"
#include "cmorder/real.hpp"

#include <any>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cmorder {

using AlgElement = QVec;

/// Parses "c0,c1,...,1" (ascending, monic). Throws MathError on bad input.
std::vector<Int> parse_polynomial(const std::string& text);
std::string format_polynomial(const std::vector<Int>& coeffs);

struct ComplexRoot {
    Complex z;
    Real radius;  ///< a root of f lies in the closed disc of this radius around z
    bool real = false;
};

class RootError : public MathError {
public:
    using MathError::MathError;
};

class EtaleAlgebra;
using AlgebraPtr = std::shared_ptr<const EtaleAlgebra>;

class EtaleAlgebra : public std::enable_shared_from_this<EtaleAlgebra> {
public:
    /// Rejects non-monic, constant or non-squarefree polynomials.
    static AlgebraPtr make(std::vector<Int> coeffs);
    static AlgebraPtr parse(const std::string& text) { return make(parse_polynomial(text)); }

    std::size_t degree() const { return n_; }
    const std::vector<Int>& poly() const { return f_; }
    std::string poly_string() const { return format_polynomial(f_); }

    AlgElement one() const;
    AlgElement gen() const;
    AlgElement from_int(const ZVec& v) const { return AlgElement(v.begin(), v.end()); }

    AlgElement mul(const AlgElement& a, const AlgElement& b) const;
    ZVec mul(const ZVec& a, const ZVec& b) const;
    AlgElement pow(const AlgElement& a, unsigned e) const;

    Rat trace(const AlgElement& a) const;
    Int trace(const ZVec& a) const;
    /// Rows are the coordinates of a * pi^i.
    RatMatrix regular_rep(const AlgElement& a) const;
    IntMatrix regular_rep(const ZVec& a) const;
    Rat norm(const AlgElement& a) const;
    bool is_zero_divisor(const AlgElement& a) const { return norm(a) == 0; }
    std::optional<AlgElement> inverse(const AlgElement& a) const;
    /// Characteristic polynomial of multiplication by a, ascending, monic.
    std::vector<Rat> charpoly(const AlgElement& a) const;

    /// Tr(pi^k) for 0 <= k <= 2n-2.
    const std::vector<Int>& power_traces() const { return traces_; }
    const IntMatrix& gram() const { return gram_; }
    const RatMatrix& gram_inverse() const { return gram_inv_; }
    /// det of the trace Gram matrix of the power basis, equal to disc(f).
    const Int& discriminant() const { return disc_; }

    /// Certified approximations at the given precision (bits, >= 64), sorted
    /// by real part then imaginary part. Throws RootError if the inclusion
    /// discs cannot be separated.
    std::vector<ComplexRoot> complex_roots(unsigned precision) const;
    /// Cached roots at >= `precision` bits, retrying at doubled precision.
    const std::vector<ComplexRoot>& roots(unsigned precision = 128) const;
    /// Numbers of real roots and of conjugate pairs.
    std::pair<std::size_t, std::size_t> signature() const;

    /// Per-algebra memo used by the higher layers (maximal order, units,
    /// class group). The factory runs at most once per key.
    template <class T>
    std::shared_ptr<const T> memo(const std::string& key, const std::function<std::shared_ptr<const T>()>& make) const {
        {
            std::lock_guard<std::mutex> g(memo_mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return std::any_cast<std::shared_ptr<const T>>(it->second);
        }
        auto value = make();
        std::lock_guard<std::mutex> g(memo_mutex_);
        auto [it, inserted] = memo_.emplace(key, value);
        return std::any_cast<std::shared_ptr<const T>>(it->second);
    }

    struct Private {};
    EtaleAlgebra(Private, std::vector<Int> coeffs);

private:
    std::size_t n_;
    std::vector<Int> f_;
    std::vector<ZVec> reduce_;  // pi^(n+k) in the power basis, 0 <= k <= n-2
    std::vector<Int> traces_;
    IntMatrix gram_;
    RatMatrix gram_inv_;
    Int disc_;

    mutable std::mutex root_mutex_;
    mutable std::vector<ComplexRoot> roots_;
    mutable unsigned roots_prec_ = 0;

    mutable std::mutex memo_mutex_;
    mutable std::map<std::string, std::any> memo_;

    template <class T>
    std::vector<T> reduce_product(std::vector<T> prod) const;
};

/// Resultant of two integer polynomials (ascending coefficients) via the
/// Sylvester determinant.
Int resultant(const std::vector<Int>& a, const std::vector<Int>& b);

/// Polynomial helpers over Q, ascending coefficients.
std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b);
std::vector<Int> poly_derivative(const std::vector<Int>& f);

}  // namespace cmorder
