#pragma once

// Full-rank Z-lattices in K, the common carrier for fractional ideals,
// orders and trace duals. A lattice is stored as (d, B) with B an HNF integer
// basis of d*L and d minimal.

#include "cmorder/algebra.hpp"

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <vector>

namespace cmorder {

class FracIdeal {
public:
    FracIdeal() = default;

    /// Canonicalizes rows/denom. Throws MathError if the rows do not span a
    /// full-rank lattice.
    static FracIdeal from_rows(AlgebraPtr alg, const IntMatrix& rows, const Int& denom = 1);
    static FracIdeal from_rational_rows(AlgebraPtr alg, const RatMatrix& rows);
    /// Z-span of the elements.
    static FracIdeal from_elements(AlgebraPtr alg, const std::vector<AlgElement>& elems);
    /// Trusted constructor: `hnf` must already be a full-rank HNF basis of
    /// denom*L; only the content is reduced.
    static FracIdeal from_hnf(AlgebraPtr alg, Int denom, IntMatrix hnf);
    /// The equation order Z[pi].
    static FracIdeal equation_lattice(AlgebraPtr alg);

    bool valid() const { return alg_ != nullptr; }
    const AlgebraPtr& algebra() const { return alg_; }
    std::size_t degree() const { return basis_.rows(); }
    const Int& denom() const { return denom_; }
    const IntMatrix& basis() const { return basis_; }

    AlgElement basis_element(std::size_t i) const;
    std::vector<AlgElement> basis_elements() const;

    /// Integer coordinates of x in this basis, if x lies in the lattice.
    std::optional<ZVec> coordinates(const AlgElement& x) const;
    bool contains(const AlgElement& x) const { return coordinates(x).has_value(); }
    /// Lattice inclusion other ⊆ *this.
    bool contains(const FracIdeal& other) const;
    /// True when the lattice lies in Z[pi]-coordinates Z^n (denominator 1).
    bool is_integral_coords() const { return denom_ == 1; }

    /// det(B) / d^n: covolume relative to Z[pi].
    Rat volume() const;
    /// x * L for a non-zero-divisor x.
    FracIdeal scaled(const AlgElement& x) const;
    FracIdeal scaled(const Rat& c) const;

    /// Smallest positive integer in the lattice generated by the basis rows
    /// (not divided by the denominator), i.e. min{a > 0 : a*1 in d*L}.
    Int min_integer_scaled() const;

    std::size_t hash() const;
    friend bool operator==(const FracIdeal& a, const FracIdeal& b) {
        return a.denom_ == b.denom_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const FracIdeal& a, const FracIdeal& b) { return !(a == b); }
    /// Deterministic total order: denominator, then basis entries.
    friend bool operator<(const FracIdeal& a, const FracIdeal& b);

private:
    FracIdeal(AlgebraPtr alg, Int denom, IntMatrix basis)
        : alg_(std::move(alg)), denom_(std::move(denom)), basis_(std::move(basis)) {}

    AlgebraPtr alg_;
    Int denom_ = 1;
    IntMatrix basis_;
};

struct FracIdealHash {
    std::size_t operator()(const FracIdeal& a) const { return a.hash(); }
};

FracIdeal sum(const FracIdeal& a, const FracIdeal& b);
FracIdeal product(const FracIdeal& a, const FracIdeal& b);
FracIdeal intersect(const FracIdeal& a, const FracIdeal& b);
/// {x in K : x*b ⊆ a}, via (b * a^t)^t.
FracIdeal colon(const FracIdeal& a, const FracIdeal& b);
FracIdeal trace_dual(const FracIdeal& a);
/// Generalized index [a : b] = vol(b) / vol(a); equals |a/b| when b ⊆ a.
Rat index(const FracIdeal& a, const FracIdeal& b);
/// a^k for k >= 1.
FracIdeal power(const FracIdeal& a, unsigned k);

/// Module generated by `gens` over `over` (an order lattice), or over Z
/// when `over` is null.
FracIdeal ideal_from_generators(AlgebraPtr alg, const std::vector<AlgElement>& gens,
                                const FracIdeal* over = nullptr);

struct QuotientData {
    std::vector<Int> divisors;  ///< nontrivial elementary divisors, ascending chain
    Int order = 1;
};
/// Elementary divisors of a/b. Throws MathError unless b ⊆ a.
QuotientData quotient(const FracIdeal& a, const FracIdeal& b);

/// Explicit presentation of a finite quotient top/bottom as
/// ⊕ Z/d_i: coordinates and lifts.
class FiniteQuotient {
public:
    FiniteQuotient(const FracIdeal& top, const FracIdeal& bottom);

    const FracIdeal& top() const { return top_; }
    const FracIdeal& bottom() const { return bottom_; }
    /// Only the nontrivial cyclic factors are kept.
    const std::vector<Int>& divisors() const { return divisors_; }
    const Int& order() const { return order_; }
    std::size_t rank() const { return divisors_.size(); }

    /// Coordinates of x ∈ top, each reduced into [0, d_i).
    std::vector<Int> coords(const AlgElement& x) const;
    /// Coordinates from top-basis integer coordinates.
    std::vector<Int> coords_from_basis(const ZVec& u) const;
    AlgElement lift(const std::vector<Int>& c) const;

private:
    FracIdeal top_, bottom_;
    std::vector<Int> divisors_;
    Int order_ = 1;
    IntMatrix right_;      // columns restricted to the nontrivial factors
    IntMatrix right_inv_;  // rows restricted likewise
};

nlohmann::json to_json(const FracIdeal& a);
FracIdeal fracideal_from_json(AlgebraPtr alg, const nlohmann::json& j);

}  // namespace cmorder

template <>
struct std::hash<cmorder::FracIdeal> {
    std::size_t operator()(const cmorder::FracIdeal& a) const { return a.hash(); }
};
