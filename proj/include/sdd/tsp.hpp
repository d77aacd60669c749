#pragma once

// Exact routing inside a single trip: Held-Karp dynamic programming over
// depot-rooted closed tours.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sdd/geometry.hpp"

namespace sdd {

/// Default size guard for the Held-Karp table.
inline constexpr std::size_t kHeldKarpLimit = 14;

/// A closed tour given as distance-matrix indices, starting and ending at
/// the depot (index 0).
struct Tour {
  double length = 0.0;
  std::vector<std::size_t> nodes;
};

/// Shortest closed tours for every subset of a fixed node set, from one
/// Held-Karp pass. Subsets are bitmasks over positions in `nodes()`.
class SubsetTours {
 public:
  /// `nodes` are matrix indices other than the depot; they are sorted and
  /// deduplicated. Throws GuardExceeded when there are more than `limit`.
  SubsetTours(const DistanceMatrix& dist, std::vector<std::size_t> nodes,
              std::size_t limit = kHeldKarpLimit);

  std::size_t size() const { return k_; }
  const std::vector<std::size_t>& nodes() const { return nodes_; }

  /// Minimum tour length over the subset (0 for the empty subset).
  double length(std::uint32_t mask) const;

  /// Minimum tour over the subset; among tours within 1e-9 (relative) of the
  /// optimum, the lexicographically smallest node sequence. The reported
  /// length is the edge sum along the returned tour.
  Tour tour(std::uint32_t mask) const;

 private:
  const DistanceMatrix* dist_;
  std::vector<std::size_t> nodes_;
  std::size_t k_ = 0;
  std::vector<double> local_;    // k x k distances between positions
  std::vector<double> depot_;    // distance depot -> position
  std::vector<double> paths_;    // [mask][j]: shortest j ~> all of mask ~> depot
};

/// Minimum-length depot-rooted tour over `nodes` (matrix indices).
Tour tsp_exact(const DistanceMatrix& dist, std::span<const std::size_t> nodes,
               std::size_t limit = kHeldKarpLimit);

/// Edge sum of a closed walk given as matrix indices.
double route_length(const DistanceMatrix& dist, std::span<const std::size_t> route);

}  // namespace sdd
