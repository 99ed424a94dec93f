#pragma once

// Cohen-Macaulay type at a prime, global type, Gorenstein and Bass tests,
// and generator counts.

#include "cmorder/order.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace cmorder {

struct PrimeType {
    PrimeIdeal prime;
    unsigned type;
};

struct TypeProfile {
    Order order;
    std::vector<PrimeType> primes;  ///< the non-invertible primes, sorted
    unsigned global_type = 1;
};

/// dim_{S/p} S^t / p S^t. Throws MathError if p is not a prime of S.
unsigned type_at_prime(const Order& s, const PrimeIdeal& p);
TypeProfile global_type(const Order& s);
bool is_gorenstein(const Order& s);
/// I (S:I) = S for an S-module I.
bool is_invertible_ideal(const FracIdeal& i, const Order& s);

/// max over primes of S of dim M/pM (1 when S has no non-invertible prime).
unsigned max_local_generators(const FracIdeal& m, const Order& s);

struct GenCount {
    unsigned value;
    /// Set when the answer depends on a principality test that was not
    /// settled (the value is then the upper bound 2).
    bool conditional = false;
};

/// Minimal number of S-module generators of M.
GenCount gens_count_module(const FracIdeal& m, const Order& s);

/// g(S). For non-maximal S this is max dim O_K/pO_K; for maximal S the
/// value is 1 exactly when the class number is one, which the caller may
/// supply, otherwise 2 flagged conditional.
GenCount g_of_order(const Order& s, std::optional<bool> class_number_one = std::nullopt);

/// Generators of the S-module O_K/S: max dim O_K/(S + pO_K).
unsigned quotient_gens_count(const Order& s);

bool is_bass(const Order& s);

/// type(S + pO_K) for a non-invertible prime p.
unsigned special_overorder_type(const Order& s, const PrimeIdeal& p);

nlohmann::json to_json(const TypeProfile& t);

}  // namespace cmorder
