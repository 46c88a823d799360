#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arbor/cycle_type.hpp"
#include "arbor/permutation.hpp"
#include "arbor/rng.hpp"
#include "arbor/spherical_index.hpp"

namespace arbor {

using bigint = boost::multiprecision::cpp_int;

/// Automorphism of the truncated tree with spherical index (d_1, ..., d_n):
/// one permutation label per internal vertex, level(i) holding the d^(i)
/// labels of degree d_{i+1} in address-rank order.
///
/// The action on a leaf (t_1, ..., t_n) is computed root-down, and the label
/// applied at level i+1 is the one attached to the *image* of the level-i
/// prefix, so that level(i)[rank(u_1..u_i)] sends t_{i+1} to u_{i+1}. This is
/// the convention the composition and inverse formulas below are derived from,
/// and the action contract act(a*b, v) == act(a, act(b, v)) is what the tests
/// pin down.
class WreathElement {
  public:
    explicit WreathElement(const SphericalIndex& idx); // identity
    static WreathElement identity(const SphericalIndex& idx) { return WreathElement(idx); }
    static WreathElement from_labels(const SphericalIndex& idx,
                                     std::vector<std::vector<Permutation>> labels);
    static WreathElement random(const SphericalIndex& idx, Rng& rng);

    const SphericalIndex& index() const { return idx_; }
    const std::vector<Permutation>& level(std::size_t i) const { return labels_[i]; }
    std::vector<Permutation>& level_mut(std::size_t i) { return labels_[i]; }

    LeafAddress act(const LeafAddress& v) const;
    WreathElement compose(const WreathElement& rhs) const; // this after rhs
    WreathElement operator*(const WreathElement& rhs) const { return compose(rhs); }
    WreathElement inverse() const;

    bool is_identity() const;
    /// Permutation of leaf ranks induced by the element.
    std::vector<std::uint64_t> leaf_permutation() const;
    CycleType leaf_cycle_type() const;
    /// True iff one leaf orbit has full size d^(n).
    bool is_full_cycle_orbit() const;
    /// Level-by-level test: the root label is a d_1-cycle and, at each deeper
    /// level, the product of labels around the cycle of one base vertex is a
    /// full cycle. Equivalent to is_full_cycle_orbit.
    bool is_full_cycle_recursive() const;

    std::string to_json() const;
    static WreathElement from_json(const std::string& text);

    bool operator==(const WreathElement& o) const { return labels_ == o.labels_; }
    auto operator<=>(const WreathElement& o) const { return labels_ <=> o.labels_; }

  private:
    SphericalIndex idx_;
    std::vector<std::vector<Permutation>> labels_;

    void require_same_index(const WreathElement& o) const;
};

/// |W_n| = prod_i (d_i!)^(d^(i-1)), exactly.
bigint group_order(const SphericalIndex& idx);
/// Number of elements acting as a single d^(n)-cycle on leaves:
/// prod_i (d_i - 1)! * (d_i!)^(d^(i-1) - 1), exactly.
bigint full_cycle_count(const SphericalIndex& idx);

/// Streams every element exactly once, in lexicographic order over per-vertex
/// labels (root first, then level-1 vertices in rank order, and so on; the
/// last vertex varies fastest).
class WreathEnumerator {
  public:
    explicit WreathEnumerator(const SphericalIndex& idx);
    /// Returns nullptr once exhausted.
    const WreathElement* next();

  private:
    WreathElement cur_;
    bool fresh_ = true;
    bool done_ = false;
};

struct OrderExceedsLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Materializes the full group; throws OrderExceedsLimit if |W_n| > limit.
std::vector<WreathElement> enumerate_all(const SphericalIndex& idx, std::uint64_t limit);

WreathElement sample_uniform(const SphericalIndex& idx, Rng& rng);

struct RatioEstimate {
    double ratio;
    double stderr_;
    std::uint64_t hits;
    std::uint64_t samples;
};

/// Monte Carlo frequency of full cycles among uniform samples. Sampling is
/// split into fixed-size seed-derived blocks, so the result depends only on
/// (idx, samples, seed) and never on the thread count.
RatioEstimate estimate_full_cycle_ratio(const SphericalIndex& idx, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads = 1);

} // namespace arbor
