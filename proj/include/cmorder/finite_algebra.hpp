#pragma once

// Finite commutative F_p-algebras given by structure constants: Frobenius,
// nilradical, idempotent splitting, and polynomial root finding over F_p.

#include "cmorder/linalg.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cmorder {

using FpVec = std::vector<std::uint64_t>;

class FpAlgebra {
public:
    FpAlgebra(std::uint64_t p, std::size_t dim, std::vector<std::vector<FpVec>> table, FpVec one);

    const PrimeField& field() const { return k_; }
    std::uint64_t p() const { return k_.p; }
    std::size_t dim() const { return dim_; }
    const FpVec& one() const { return one_; }
    FpVec zero() const { return FpVec(dim_, 0); }
    FpVec basis(std::size_t i) const;

    FpVec add(const FpVec& a, const FpVec& b) const;
    FpVec sub(const FpVec& a, const FpVec& b) const;
    FpVec scale(const FpVec& a, std::uint64_t c) const;
    FpVec mul(const FpVec& a, const FpVec& b) const;
    FpVec pow(FpVec a, const Int& e) const;
    bool is_zero(const FpVec& a) const;

    /// Rows are the coordinates of e_i^p (the Frobenius is F_p-linear).
    FpMatrix frobenius() const;
    /// Rows are the coordinates of e_i * a.
    FpMatrix mul_matrix(const FpVec& a) const;

private:
    PrimeField k_;
    std::size_t dim_;
    std::vector<std::vector<FpVec>> table_;
    FpVec one_;
};

/// v * M for a row vector v.
FpVec row_apply(const FpVec& v, const FpMatrix& m, const PrimeField& k);

/// Nilradical: the kernel of a Frobenius iterate x -> x^(p^k), p^k >= dim.
FpSubspace nilradical(const FpAlgebra& a);

/// A / I for an ideal I, with basis the standard vectors at the non-pivot
/// positions of I's echelon form. `keep` receives those positions.
FpAlgebra quotient_algebra(const FpAlgebra& a, const FpSubspace& ideal, std::vector<std::size_t>& keep);

/// Orthogonal primitive idempotents of a reduced algebra, summing to 1.
std::vector<FpVec> primitive_idempotents(const FpAlgebra& b, std::mt19937_64& rng);

/// Minimal polynomial of x inside the unital subalgebra with identity e
/// (ascending, monic).
std::vector<std::uint64_t> minimal_polynomial(const FpAlgebra& a, const FpVec& x, const FpVec& e);

/// Roots of a squarefree polynomial over F_p that splits into linear factors
/// (ascending coefficients), sorted.
std::vector<std::uint64_t> split_roots(const std::vector<std::uint64_t>& g, const PrimeField& k,
                                       std::mt19937_64& rng);

}  // namespace cmorder
