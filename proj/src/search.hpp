#pragma once

// Helpers shared by the branch-and-bound solvers (not installed).

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "sdd/core.hpp"
#include "sdd/solve.hpp"

namespace sdd::detail {

/// Node and wall-clock budget of one solve call.
class Budget {
 public:
  explicit Budget(const SolverConfig& cfg)
      : start_(Clock::now()), node_limit_(cfg.node_limit), time_limit_(cfg.time_limit) {}

  /// Counts a node; false once a limit is hit (and from then on).
  bool tick() {
    if (exhausted_) {
      return false;
    }
    ++nodes_;
    if (node_limit_ && nodes_ > *node_limit_) {
      exhausted_ = true;
    } else if (time_limit_ && (nodes_ & 255U) == 0 && elapsed() > *time_limit_) {
      exhausted_ = true;
    }
    return !exhausted_;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_;
  std::optional<std::uint64_t> node_limit_;
  std::optional<double> time_limit_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

/// -1, 0, 1 comparison of doubles with tolerance.
inline int cmp_eps(double a, double b, double eps = kEps) {
  if (a < b - eps) {
    return -1;
  }
  if (a > b + eps) {
    return 1;
  }
  return 0;
}

/// Positions set in `mask`, ascending.
inline std::vector<int> bits_of(std::uint32_t mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

inline int resolved_trip_bound(const Instance& inst, const SolverConfig& cfg) {
  return std::max(1, cfg.max_trips.value_or(inst.trip_bound()));
}

/// Bitmask search needs at most 32 candidate orders.
void require_mask_capacity(std::size_t n, const char* who);

}  // namespace sdd::detail
