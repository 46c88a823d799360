#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arbor {

/// Branching degrees (d_1, ..., d_n) of a spherically homogeneous rooted tree
/// truncated at level n, together with the partial products d^(i) = d_1...d_i
/// (d^(0) = 1). The leaves at level n number d^(n).
class SphericalIndex {
  public:
    explicit SphericalIndex(std::vector<std::uint32_t> degrees);
    static SphericalIndex parse(const std::string& csv); // e.g. "2,3,2"

    std::size_t levels() const { return degrees_.size(); }
    /// d_{i+1}, 0-based: degree(0) = d_1.
    std::uint32_t degree(std::size_t i) const { return degrees_[i]; }
    const std::vector<std::uint32_t>& degrees() const { return degrees_; }
    /// d^(i); partial(0) = 1, partial(levels()) = leaf count.
    std::uint64_t partial(std::size_t i) const { return partial_[i]; }
    std::uint64_t leaf_count() const { return partial_.back(); }

    SphericalIndex prefix(std::size_t k) const; // (d_1, ..., d_k)
    std::string to_string() const;

    bool operator==(const SphericalIndex&) const = default;

  private:
    std::vector<std::uint32_t> degrees_;
    std::vector<std::uint64_t> partial_;
};

/// Path from the root to a level-n vertex; coordinate i lies in {0, ..., d_{i+1}-1}.
struct LeafAddress {
    std::vector<std::uint32_t> path;
    bool operator==(const LeafAddress&) const = default;
};

} // namespace arbor
