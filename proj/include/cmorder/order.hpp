#pragma once

// Orders, their maximal ideals, the maximal order and the conductor.
// Local questions at a prime p are answered by global colon criteria; no
// localized or completed rings are built.

#include "cmorder/factor.hpp"
#include "cmorder/finite_algebra.hpp"
#include "cmorder/lattice.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace cmorder {

class Order;

/// S/p as an explicit finite field: the quotient presentation S/p = (Z/p)^f
/// and the multiplication table in those coordinates.
struct ResidueField {
    FiniteQuotient quotient;
    FpAlgebra field;
};

class PrimeIdeal {
public:
    PrimeIdeal(Int p, unsigned residue_degree, FracIdeal ideal, FracIdeal order_lattice,
               std::shared_ptr<const ResidueField> residue);

    const Int& p() const { return p_; }
    unsigned residue_degree() const { return f_; }
    /// |S/p| = p^f.
    Int residue_size() const;
    const FracIdeal& ideal() const { return ideal_; }
    const FracIdeal& order_lattice() const { return order_; }
    const ResidueField& residue() const { return *residue_; }

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal_ == b.ideal_; }
    friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.p_ != b.p_) return a.p_ < b.p_;
        return a.ideal_ < b.ideal_;
    }

private:
    Int p_;
    unsigned f_;
    FracIdeal ideal_;
    FracIdeal order_;
    std::shared_ptr<const ResidueField> residue_;
};

class Order {
public:
    Order() = default;

    /// Checks that 1 ∈ L and L*L = L; throws MathError otherwise.
    static Order from_lattice(const FracIdeal& lattice);
    /// Skips the ring check (for lattices known to be orders).
    static Order trusted(const FracIdeal& lattice);
    static Order equation_order(const AlgebraPtr& alg);

    bool valid() const { return impl_ != nullptr; }
    const FracIdeal& lattice() const;
    const AlgebraPtr& algebra() const { return lattice().algebra(); }
    std::size_t degree() const { return lattice().degree(); }

    /// Coordinates of b_i * b_j in the order basis: table[i][j].
    const std::vector<std::vector<ZVec>>& mult_table() const;
    /// Coordinates of 1 in the order basis.
    const ZVec& one_coords() const;
    /// det(Tr(b_i b_j)).
    const Int& discriminant() const;

    Order maximal_order() const;
    bool is_maximal() const;
    /// [O_K : S].
    const Int& index_in_maximal() const;
    /// (S : O_K).
    const FracIdeal& conductor() const;

    /// Maximal ideals above p, sorted by canonical form.
    const std::vector<PrimeIdeal>& primes_above(const Int& p) const;
    /// Primes containing the conductor, sorted.
    const std::vector<PrimeIdeal>& noninvertible_primes() const;

    /// S * m = m.
    bool is_module(const FracIdeal& m) const;

    friend bool operator==(const Order& a, const Order& b) { return a.lattice() == b.lattice(); }
    friend bool operator!=(const Order& a, const Order& b) { return !(a == b); }
    friend bool operator<(const Order& a, const Order& b) { return a.lattice() < b.lattice(); }

private:
    friend Order maximal_order(const AlgebraPtr& alg);
    struct Impl;
    explicit Order(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<Impl> impl_;
};

/// (I : I) as an order.
Order multiplicator_ring(const FracIdeal& i);

/// The maximal order of the algebra (Round 2 from Z[pi]), cached per algebra.
Order maximal_order(const AlgebraPtr& alg);

bool is_invertible_prime(const Order& s, const PrimeIdeal& p);

/// dim over S/p of M/pM.
unsigned dim_quotient_at_prime(const FracIdeal& m, const PrimeIdeal& p);
/// dim over S/p of a/b, for S-modules b ⊆ a with p*a ⊆ b.
unsigned dim_over_residue(const FracIdeal& a, const FracIdeal& b, const PrimeIdeal& p);

/// a_p ⊇ b_p, decided by (a:b) ∩ S ⊄ p.
bool locally_contains(const FracIdeal& a, const FracIdeal& b, const PrimeIdeal& p);
bool locally_equal(const FracIdeal& a, const FracIdeal& b, const PrimeIdeal& p);

/// The finite algebra S/pS with table and unit in the order basis.
FpAlgebra reduce_mod_p(const Order& s, std::uint64_t p);

nlohmann::json to_json(const Order& s);
nlohmann::json to_json(const PrimeIdeal& p);

}  // namespace cmorder
