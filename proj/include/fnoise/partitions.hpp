#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fnoise/filter.hpp"

namespace fnoise {

/// Upper bound on the ground-set size for exhaustive enumeration.
struct EnumerationGuard {
  int max_n = 12;
};

/// Paired color tuple k and filter tuple sigma decorating word positions.
struct ColorFilterTuple {
  std::vector<int> colors;
  std::vector<Filter> filters;

  ColorFilterTuple() = default;
  ColorFilterTuple(std::vector<int> colors, std::vector<Filter> filters);

  /// Same filter at every position.
  static ColorFilterTuple uniform(std::vector<int> colors, const Filter& filter);

  std::size_t size() const { return colors.size(); }
};

/// A partition of {1..n} in canonical form: ascending blocks ordered by
/// least element. Stored as a restricted-growth string (0-based block ids).
class SetPartition {
 public:
  SetPartition() = default;

  /// Blocks hold 1-based elements; they must be disjoint, nonempty, and
  /// cover {1..n}. Throws std::invalid_argument otherwise.
  static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);

  /// Equal labels share a block: the partition "associated with" a tuple.
  template <class T>
  static SetPartition from_labels(std::span<const T> labels);

  /// Builds from a restricted-growth string; validates it.
  static SetPartition from_rgs(std::vector<std::uint8_t> rgs);

  /// Parses "1,3,5|2,4" (also accepts braces: "{1,3,5}|{2,4}").
  static SetPartition parse(int n, const std::string& text);

  static SetPartition singletons(int n);

  int n() const { return static_cast<int>(rgs_.size()); }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<std::uint8_t>& rgs() const { return rgs_; }
  /// 0-based id of the block holding the 1-based element i.
  int block_of(int i) const { return rgs_.at(i - 1); }

  /// True if every block of *this lies inside a block of `coarser`.
  bool refines(const SetPartition& coarser) const;
  bool is_pair_partition() const;

  /// "{1,5}|{2,4}|{3}"
  std::string to_string() const;

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.rgs_ == b.rgs_;
  }
  friend bool operator<(const SetPartition& a, const SetPartition& b) {
    return a.rgs_ < b.rgs_;
  }

 private:
  explicit SetPartition(std::vector<std::uint8_t> rgs);
  std::vector<std::uint8_t> rgs_;
  std::vector<std::vector<int>> blocks_;
};

template <class T>
SetPartition SetPartition::from_labels(std::span<const T> labels) {
  std::vector<std::uint8_t> rgs(labels.size());
  std::vector<T> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::size_t id = 0;
    while (id < seen.size() && !(seen[id] == labels[i])) ++id;
    if (id == seen.size()) seen.push_back(labels[i]);
    rgs[i] = static_cast<std::uint8_t>(id);
  }
  return SetPartition(std::move(rgs));
}

/// All Bell(n) partitions, lexicographic by restricted-growth string.
std::vector<SetPartition> enumerate_partitions(int n, const EnumerationGuard& guard = {});

/// Partitions whose blocks all have two elements; empty for odd n.
std::vector<SetPartition> enumerate_pair_partitions(int n, const EnumerationGuard& guard = {});

/// (A1) blocks are monochromatic; (A2) for i<m<j with i,j in a block B and
/// m outside B, the block color lies in the filter at m.
bool is_adapted(const SetPartition& partition, const ColorFilterTuple& cf);

/// Unique coarsest refinement of `partition` that is adapted to `cf`.
SetPartition coarsest_adapted(const SetPartition& partition, const ColorFilterTuple& cf);

std::vector<SetPartition> enumerate_adapted(const ColorFilterTuple& cf, bool pair_only,
                                            const EnumerationGuard& guard = {});

/// Catalan(n/2) for even n, 0 for odd n.
std::uint64_t count_noncrossing_pairings(int n, const EnumerationGuard& guard = {});

bool is_noncrossing(const SetPartition& partition);

}  // namespace fnoise
