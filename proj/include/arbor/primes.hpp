#pragma once

#include <cstdint>
#include <vector>

namespace arbor {

/// Sieved odd primes up to a bound. p = 2 is excluded throughout: the
/// finite-field kernels assume odd characteristic and one prime never moves a
/// density.
struct PrimeRange {
    std::uint64_t bound;
    std::vector<std::uint32_t> primes;
};

/// Exact Eratosthenes sieve of the odd primes <= X; requires X >= 3.
PrimeRange sieve_primes(std::uint64_t X);

} // namespace arbor
