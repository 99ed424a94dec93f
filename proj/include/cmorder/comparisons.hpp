#pragma once

// Trace ideals, nearly and almost Gorenstein orders, tested one prime at a
// time through colon criteria.

#include "cmorder/order.hpp"

#include <json.hpp>

#include <vector>

namespace cmorder {

/// tr S^t = S^t (S : S^t), an integral S-ideal; equal to S iff S is
/// Gorenstein.
FracIdeal trace_ideal(const Order& s);

/// p ⊆ tr S^t locally at p.
bool is_nearly_gorenstein_at(const Order& s, const PrimeIdeal& p);

/// Length of (a/b)_p as an S_p-module, for S-modules b ⊆ a. Throws
/// MathError when b ⊄ a.
unsigned length_at_prime(const FracIdeal& a, const FracIdeal& b, const PrimeIdeal& p);

struct LengthReport {
    PrimeIdeal prime;
    unsigned maximal_over_order = 0;    ///< l(O_K / S)
    unsigned order_over_conductor = 0;  ///< l(S / f)
    unsigned colon_over_conductor = 0;  ///< l((S:p) / f)
    unsigned type = 1;                  ///< l((S:p) / S)
    bool nearly_gorenstein = true;
    /// l(O_K/S) = l(S/f) + type - 1; equivalently l(O_K/S) = l((S:p)/f) - 1.
    bool almost_gorenstein = true;
};

/// Both forms of the almost Gorenstein equality are evaluated and must give
/// the same verdict (VerificationError otherwise).
LengthReport is_almost_gorenstein_at(const Order& s, const PrimeIdeal& p);

/// One report per prime above the index [O_K : S], sorted.
std::vector<LengthReport> comparison_report(const Order& s);

/// dim S^t / (S^t)^2 (S:S^t) at p; equals the type at p when S is nearly
/// Gorenstein but not Gorenstein at p.
unsigned nearly_gorenstein_type(const Order& s, const PrimeIdeal& p);

nlohmann::json to_json(const LengthReport& r);

}  // namespace cmorder
