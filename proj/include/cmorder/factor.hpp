#pragma once

// Integer factorization by trial division and Pollard-Brent rho.

#include "cmorder/linalg.hpp"

#include <utility>
#include <vector>

namespace cmorder {

class FactorError : public MathError {
public:
    using MathError::MathError;
};

struct FactorOptions {
    unsigned long trial_bound = 100000;
    unsigned long rho_iterations = 2000000;  ///< per rho attempt
    unsigned rho_attempts = 40;
};

bool is_probable_prime(const Int& n);

/// Prime factorization of |n| (n != 0), ascending primes. Throws FactorError
/// when a composite cofactor resists the configured effort.
std::vector<std::pair<Int, unsigned>> factor(const Int& n, const FactorOptions& opt = {});

/// Distinct prime divisors of |n|, ascending.
std::vector<Int> prime_divisors(const Int& n, const FactorOptions& opt = {});

}  // namespace cmorder
