#pragma once

// Weak equivalence of fractional ideals and the sets W_T(S) of weak classes
// with a prescribed multiplicator ring.

#include "cmorder/cmtype.hpp"
#include "cmorder/order.hpp"

#include <vector>

namespace cmorder {

/// 1 ∈ (I:J)(J:I).
bool weak_equivalent(const FracIdeal& i, const FracIdeal& j);
/// I_p ≅ J_p, decided by (I:J)(J:I) ∩ S ⊄ p.
bool locally_isomorphic_at(const FracIdeal& i, const FracIdeal& j, const PrimeIdeal& p);

struct WeakClassSet {
    Order base;
    Order order;  ///< the common multiplicator ring T
    /// Pairwise weakly inequivalent, each with (I:I) = T and I O_K = O_K.
    std::vector<FracIdeal> reps;
};

/// Exhaustive: for each rational p under the conductor of T, all T-modules
/// M with f + p^a O_K ⊆ M ⊆ O_K and M O_K = O_K are enumerated and sorted
/// into weak classes with multiplicator ring T + p^a O_K; the global classes
/// are the intersections of one local class per p. Representatives are the
/// least canonical form of each local class.
WeakClassSet weak_classes_with_multring(const Order& s, const Order& t);

/// The 2^N patched ideals for an order of type at most 2. Throws MathError
/// when type(T) > 2.
WeakClassSet weak_classes_type2_shortcut(const Order& s, const Order& t);

/// Shortcut when type(T) ≤ 2, exhaustive otherwise.
WeakClassSet weak_classes(const Order& s, const Order& t);

/// The number of T-submodules between the bottom and top lattices that were
/// visited by the last exhaustive enumeration at p (for diagnostics).
struct LocalWeakData {
    Int p;
    std::size_t modules = 0;
    std::vector<FracIdeal> reps;
};
std::vector<LocalWeakData> local_weak_classes(const Order& t);

}  // namespace cmorder
