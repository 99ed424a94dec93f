#pragma once

// Units and class group of the maximal order, one simple factor K_i = e_i K
// at a time. Elements living in a factor are padded with 1 on the others
// (see pad()) so they remain units of K.

#include "cmorder/principal.hpp"

#include <json.hpp>

#include <vector>

namespace cmorder {

struct ComponentUnits {
    AlgElement torsion;  ///< padded generator of the roots of unity
    Int torsion_order;
    std::vector<AlgElement> fundamental;  ///< padded, independent
    /// The index of <torsion, fundamental> in O_{K_i}^* is prime to every
    /// prime below this bound. Zero when the unit rank is 0.
    unsigned long saturated_below = 0;
    /// True when the group is provably all of O_{K_i}^* (unit rank 0).
    bool certified = true;
};

struct UnitGroup {
    std::vector<ComponentUnits> parts;  ///< one per algebra_components() entry
    bool certified = true;
    /// Torsion generators then fundamental units, factor by factor.
    std::vector<AlgElement> generators() const;
};

struct ClassGroupPart {
    std::vector<FracIdeal> factor_base;  ///< primes of O_K over this factor
    std::vector<Int> invariants;         ///< cyclic orders > 1
    std::vector<ZVec> generators;        ///< exponents over the factor base
    long double bound = 0;               ///< norms up to this were used
    /// Proven: Minkowski bound covered and every class of prime order shown
    /// non-principal by an exhaustive search.
    bool certified = true;
};

struct ClassGroup {
    std::vector<ClassGroupPart> parts;
    std::vector<Int> invariants;  ///< of the product
    Int order = 1;
    bool certified = true;
};

/// Computed together and cached per algebra.
const UnitGroup& unit_group(const AlgebraPtr& alg);
const ClassGroup& class_group(const AlgebraPtr& alg);

/// An integral O_K-ideal built from factor-base exponents, shrunk inside its
/// class after every multiplication.
FracIdeal class_ideal(const AlgebraPtr& alg, std::size_t part, const ZVec& exponents);

/// Generators of Cl(O_K) as integral ideals coprime to `modulus`, with a
/// generator of each power ideal^order.
struct ClassGenerator {
    FracIdeal ideal;
    Int order;
    AlgElement power_generator;
};
std::vector<ClassGenerator> class_generators_coprime(const AlgebraPtr& alg, const FracIdeal& modulus);

/// Valuation of x ∈ K^* at a prime of O_K.
int valuation(const AlgElement& x, const PrimeIdeal& p);

nlohmann::json to_json(const UnitGroup& u);
nlohmann::json to_json(const ClassGroup& c);

}  // namespace cmorder
