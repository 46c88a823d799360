#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "arbor/rng.hpp"

namespace arbor {

/// A permutation of {0, ..., d-1}, stored as its image table.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::uint32_t degree); // identity
    static Permutation from_images(std::vector<std::uint32_t> images);
    static Permutation random(std::uint32_t degree, Rng& rng);
    /// Builds a cycle (c_0 c_1 ... c_{k-1}) on {0..d-1}; entries are 0-based.
    static Permutation from_cycle(std::uint32_t degree, const std::vector<std::uint32_t>& cycle);

    std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
    std::uint32_t operator()(std::uint32_t x) const { return img_[x]; }
    const std::vector<std::uint32_t>& images() const { return img_; }

    /// Composition acting left: (a*b)(x) = a(b(x)).
    Permutation operator*(const Permutation& rhs) const;
    Permutation inverse() const;

    bool is_identity() const;
    /// True iff the permutation is a single cycle through all d points.
    bool is_full_cycle() const;
    std::vector<std::uint32_t> cycle_lengths() const; // sorted descending

    /// Advances to the next permutation in lexicographic image order.
    /// Returns false (and resets to the identity) after the last one.
    bool next_lex();

    auto operator<=>(const Permutation&) const = default;

  private:
    std::vector<std::uint32_t> img_;
};

} // namespace arbor
