#pragma once

// Process-wide switches shared by the library layers.

#include "cmorder/linalg.hpp"

#include <cstddef>
#include <string>

namespace cmorder {

/// When on, every redundant formula is evaluated and compared.
bool verification_mode();
void set_verification_mode(bool on);

/// Cap on the number of lattice vectors a principality search may visit
/// before giving up with an "unknown" verdict (positive unit rank only).
std::size_t search_vector_limit();
void set_search_vector_limit(std::size_t n);

/// Largest prime norm admitted to a class group factor base. Factors whose
/// Minkowski bound exceeds it get a conditional class group.
unsigned long factor_base_cap();
void set_factor_base_cap(unsigned long b);

/// Unit groups are checked to be saturated at every prime below this.
unsigned long saturation_bound();
void set_saturation_bound(unsigned long b);

/// Working precision in bits for complex roots and embeddings.
unsigned root_precision();
void set_root_precision(unsigned bits);

/// A redundant formula disagreed with the primary computation.
class VerificationError : public MathError {
public:
    using MathError::MathError;
};

inline void verify_that(bool ok, const std::string& what) {
    if (!ok) throw VerificationError("verification failed: " + what);
}

}  // namespace cmorder
