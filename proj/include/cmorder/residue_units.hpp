#pragma once

// The unit group of a finite quotient ring A/g, with discrete logarithms.

#include "cmorder/order.hpp"

#include <vector>

namespace cmorder {

/// (A/g)^* for an order A and an A-ideal g ⊆ A of finite index.
///
/// The raw generators are CRT lifts of generators of each (A/p)^* followed
/// by 1 + b for b running over bases of (J^k + g)/(J^(k+1) + g), J the
/// radical. Relations between them are upper triangular.
class ResidueUnitGroup {
public:
    ResidueUnitGroup(const Order& a, const FracIdeal& g);

    const Order& ring() const { return a_; }
    const FracIdeal& modulus() const { return g_; }
    const std::vector<AlgElement>& generators() const { return gens_; }
    /// Rows generate the kernel of Z^m -> (A/g)^*.
    const IntMatrix& relations() const { return rel_; }
    /// |(A/g)^*|.
    const Int& order() const { return order_; }
    /// Elementary divisors of the group (trivial ones dropped).
    std::vector<Int> invariants() const;

    /// Exponents e with x ≡ prod gens^e (mod g). Throws MathError when x is
    /// not in A or not a unit modulo g.
    ZVec dlog(const AlgElement& x) const;
    bool is_unit(const AlgElement& x) const;

    /// Canonical representative of x mod g (x ∈ A).
    AlgElement reduce(const AlgElement& x) const;
    AlgElement mul(const AlgElement& x, const AlgElement& y) const;
    AlgElement pow(AlgElement x, Int e) const;
    AlgElement inverse(const AlgElement& x) const;

private:
    struct Level {
        FiniteQuotient q;  // (J^k + g) / (J^(k+1) + g)
    };
    struct Residue {
        PrimeIdeal prime;
        FpVec generator;   // generator of (A/p)^*
        Int order;         // q - 1
        std::vector<Int> order_factors;
    };

    std::uint64_t residue_dlog(const Residue& r, const FpVec& x) const;

    Order a_;
    FracIdeal g_;
    FiniteQuotient quot_;
    std::vector<Residue> residues_;
    std::vector<Level> levels_;
    std::vector<AlgElement> gens_, gen_inverses_;
    IntMatrix rel_;
    Int order_ = 1;
};

}  // namespace cmorder
