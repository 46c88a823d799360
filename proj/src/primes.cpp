#include "arbor/primes.hpp"

#include <stdexcept>

namespace arbor {

PrimeRange sieve_primes(std::uint64_t X) {
    if (X < 3) throw std::invalid_argument("sieve_primes: bound must be >= 3");
    if (X >= (std::uint64_t{1} << 32)) throw std::invalid_argument("sieve_primes: bound too large");
    std::vector<bool> composite(X + 1, false);
    for (std::uint64_t i = 3; i * i <= X; i += 2) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j <= X; j += 2 * i) composite[j] = true;
    }
    PrimeRange out{X, {}};
    for (std::uint64_t i = 3; i <= X; i += 2)
        if (!composite[i]) out.primes.push_back(static_cast<std::uint32_t>(i));
    return out;
}

} // namespace arbor
