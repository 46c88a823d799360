#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace arbor {

/// Partition of a degree: orbit sizes of a permutation, or the degrees (with
/// multiplicity) of the irreducible factors of a squarefree polynomial.
/// Parts are kept sorted descending.
class CycleType {
  public:
    CycleType() = default;
    explicit CycleType(std::vector<std::uint64_t> parts);

    const std::vector<std::uint64_t>& parts() const { return parts_; }
    std::uint64_t sum() const { return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0}); }
    bool is_single_cycle() const { return parts_.size() == 1; }

    std::string to_string() const; // "4", "2+2", "2+1+1"

    auto operator<=>(const CycleType&) const = default;

  private:
    std::vector<std::uint64_t> parts_;
};

} // namespace arbor
