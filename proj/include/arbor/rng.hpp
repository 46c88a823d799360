#pragma once

#include <cstdint>
#include <random>

namespace arbor {

/// Deterministic random source. All randomized operations in the library draw
/// through this wrapper so that results depend only on the seed, never on the
/// platform's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform value in [0, n), unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    /// Uniform integer in [-n, n].
    std::int64_t symmetric(std::uint64_t n) {
        return static_cast<std::int64_t>(below(2 * n + 1)) - static_cast<std::int64_t>(n);
    }

    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Derives an independent stream seed (splitmix64 finalizer).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace arbor
