#include "sdd/tsp.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "sdd/kernels.hpp"

namespace sdd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SubsetTours::SubsetTours(const DistanceMatrix& dist, std::vector<std::size_t> nodes,
                         std::size_t limit)
    : dist_(&dist), nodes_(std::move(nodes)) {
  std::ranges::sort(nodes_);
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  std::erase(nodes_, std::size_t{0});
  k_ = nodes_.size();
  if (k_ > limit || k_ > 30) {
    throw GuardExceeded("Held-Karp limit exceeded: " + std::to_string(k_) + " nodes > " +
                        std::to_string(std::min<std::size_t>(limit, 30)));
  }
  for (std::size_t v : nodes_) {
    if (v >= dist.size()) {
      throw std::out_of_range("SubsetTours: node index outside the matrix");
    }
  }

  local_.resize(k_ * k_);
  depot_.resize(k_);
  for (std::size_t a = 0; a < k_; ++a) {
    depot_[a] = dist(0, nodes_[a]);
    for (std::size_t b = 0; b < k_; ++b) {
      local_[a * k_ + b] = dist(nodes_[a], nodes_[b]);
    }
  }

  const std::size_t masks = std::size_t{1} << k_;
  paths_.assign(masks * k_, kInf);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    double* row = paths_.data() + mask * k_;
    for (std::size_t j = 0; j < k_; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      if ((mask & bit) == 0) {
        continue;
      }
      const std::size_t rest = mask ^ bit;
      if (rest == 0) {
        row[j] = dist(nodes_[j], 0);
      } else {
        row[j] = kernels::min_plus({local_.data() + j * k_, k_},
                                   {paths_.data() + rest * k_, k_});
      }
    }
  }
}

double SubsetTours::length(std::uint32_t mask) const {
  if (mask == 0) {
    return 0.0;
  }
  return kernels::min_plus(depot_, {paths_.data() + std::size_t{mask} * k_, k_});
}

Tour SubsetTours::tour(std::uint32_t mask) const {
  Tour out;
  out.nodes.push_back(0);
  if (mask == 0) {
    out.nodes.push_back(0);
    return out;
  }
  const double best = length(mask);
  const double tol = 1e-9 * std::max(1.0, best);
  double acc = 0.0;
  std::size_t cur = k_;  // k_ marks the depot
  std::uint32_t left = mask;
  while (left != 0) {
    std::size_t pick = k_;
    double pick_step = 0.0;
    double fallback = kInf;
    std::size_t fallback_j = k_;
    for (std::size_t j = 0; j < k_; ++j) {
      if ((left >> j & 1U) == 0) {
        continue;
      }
      const double step = cur == k_ ? depot_[j] : local_[cur * k_ + j];
      const double total = acc + step + paths_[std::size_t{left} * k_ + j];
      if (total <= best + tol) {
        pick = j;
        pick_step = step;
        break;
      }
      if (total < fallback) {
        fallback = total;
        fallback_j = j;
      }
    }
    if (pick == k_) {
      // rounding pushed every continuation past the tolerance
      pick = fallback_j;
      pick_step = cur == k_ ? depot_[pick] : local_[cur * k_ + pick];
    }
    acc += pick_step;
    cur = pick;
    left &= ~(1U << pick);
    out.nodes.push_back(nodes_[pick]);
  }
  out.nodes.push_back(0);
  out.length = route_length(*dist_, out.nodes);
  return out;
}

Tour tsp_exact(const DistanceMatrix& dist, std::span<const std::size_t> nodes,
               std::size_t limit) {
  SubsetTours tours(dist, {nodes.begin(), nodes.end()}, limit);
  const auto full = static_cast<std::uint32_t>((std::uint64_t{1} << tours.size()) - 1);
  return tours.tour(full);
}

double route_length(const DistanceMatrix& dist, std::span<const std::size_t> route) {
  double total = 0.0;
  for (std::size_t i = 1; i < route.size(); ++i) {
    total += dist(route[i - 1], route[i]);
  }
  return total;
}

}  // namespace sdd
