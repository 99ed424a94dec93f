#pragma once

// Minkowski geometry of K: the T2 embedding, LLL reduction and short-vector
// enumeration. Numerics only propose candidates; callers verify exactly.

#include "cmorder/lattice.hpp"

#include <functional>
#include <vector>

namespace cmorder {

/// Real coordinates with |coords(x)|^2 = T2(x) = sum |sigma(x)|^2: one
/// coordinate per real root, sqrt(2) Re and sqrt(2) Im per conjugate pair.
class Embedding {
public:
    /// precision 0 means root_precision().
    explicit Embedding(AlgebraPtr alg, unsigned precision = 0);

    const AlgebraPtr& algebra() const { return alg_; }
    std::vector<long double> coords(const AlgElement& x) const;
    long double t2(const AlgElement& x) const;
    /// sigma(x) on the sorted roots (all n of them).
    std::vector<Complex> conjugates(const AlgElement& x) const;
    /// Indices of real roots and of the upper-half-plane member of each pair.
    const std::vector<std::size_t>& real_roots() const { return real_; }
    const std::vector<std::size_t>& complex_roots() const { return cplx_; }

private:
    AlgebraPtr alg_;
    unsigned prec_;
    std::vector<std::vector<Complex>> powers_;  // powers_[k][j] = z_k^j
    std::vector<std::size_t> real_, cplx_;
};

/// A lattice basis reduced for T2, with its Gram matrix.
struct ReducedBasis {
    std::vector<AlgElement> basis;
    std::vector<std::vector<long double>> gram;
};

ReducedBasis lll_reduce(const std::vector<AlgElement>& basis, const Embedding& emb, long double delta = 0.99L);

/// Calls visit(x) for every nonzero lattice vector x (one of each pair ±x)
/// with T2(x) <= bound, until visit returns false or `limit` vectors have
/// been produced. Returns false when stopped early by the limit.
bool enumerate_short(const ReducedBasis& rb, long double bound, std::size_t limit,
                     const std::function<bool(const AlgElement&)>& visit);
/// Same, handing out coordinates in the reduced basis.
bool enumerate_short_coeffs(const ReducedBasis& rb, long double bound, std::size_t limit,
                            const std::function<bool(const std::vector<long long>&)>& visit);
AlgElement combine(const ReducedBasis& rb, const std::vector<long long>& coeffs);

/// One simple factor K_i = eK of the algebra.
struct Component {
    AlgElement idempotent;
    std::size_t degree;
    std::size_t real_places;
    std::size_t complex_places;
    Int discriminant;  ///< of O_K e
    long double minkowski_bound;
    std::size_t unit_rank() const { return real_places + complex_places - 1; }
};

/// The decomposition K = prod K_i from the primitive idempotents of O_K,
/// cached per algebra.
const std::vector<Component>& algebra_components(const AlgebraPtr& alg);
std::size_t unit_rank(const AlgebraPtr& alg);

/// HNF basis of the projection e*L (rank deg e).
std::vector<AlgElement> projected_basis(const FracIdeal& l, const AlgElement& e);

/// sqrt(det Gram_trace(a e) / det Gram_trace(b e)) = [b e : a e] for the
/// projections of two lattices onto a component.
Rat component_index(const FracIdeal& b, const FracIdeal& a, const AlgElement& e);

}  // namespace cmorder
