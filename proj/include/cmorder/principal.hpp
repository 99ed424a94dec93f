#pragma once

// Principality of invertible ideals by short-vector search in the T2 norm.

#include "cmorder/geometry.hpp"
#include "cmorder/order.hpp"

#include <json.hpp>

#include <optional>

namespace cmorder {

enum class Principality { yes, no, unknown };

struct PrincipalResult {
    Principality status = Principality::unknown;
    std::optional<AlgElement> generator;  ///< set when status is yes
    long double bound = 0;                ///< largest T2 bound searched
};

/// Decides whether L = xT for some x. The search is exhaustive, and a miss
/// is a proof, when every simple factor of K has unit rank 0; otherwise the
/// bound is doubled until search_vector_limit() vectors have been seen and a
/// miss is reported as unknown. Throws MathError unless L is an invertible
/// T-module.
PrincipalResult is_principal(const FracIdeal& l, const Order& t);

/// Same search without the invertibility check, for callers that already
/// know L is an invertible T-ideal.
PrincipalResult find_generator(const FracIdeal& l, const Order& t);

/// Same question for a fractional O_K-ideal, settled one simple factor at a
/// time; factors of unit rank 0 are decided exactly even when others are not.
PrincipalResult principal_maximal(const FracIdeal& a);

/// x e + (1 - e): an element of the factor eK made a non-zero-divisor.
AlgElement pad(const AlgElement& x, const AlgElement& e);
/// Indices of the roots of f at which e is 1.
std::vector<std::size_t> component_roots(const Embedding& emb, const AlgElement& e);

const char* to_string(Principality p);

}  // namespace cmorder
