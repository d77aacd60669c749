#include "sdd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdd/kernels.hpp"

namespace sdd {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> data)
    : n_(n), data_(std::move(data)) {
  if (data_.size() != n_ * n_) {
    throw std::invalid_argument("DistanceMatrix: data is not n*n");
  }
}

double euclidean(const Location& a, const Location& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return std::sqrt(dx * dx + dy * dy);
}

DistanceMatrix distance_matrix(std::span<const Location> points) {
  if (points.empty()) {
    throw std::invalid_argument("distance_matrix: no points");
  }
  const std::size_t n = points.size();
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      throw std::invalid_argument("distance_matrix: non-finite coordinate");
    }
    xs[i] = points[i].x;
    ys[i] = points[i].y;
  }
  std::vector<double> data(n * n);
  kernels::pairwise_distances(xs, ys, data);
  return DistanceMatrix(n, std::move(data));
}

DistanceMatrix order_matrix(const Instance& inst) {
  std::vector<Location> pts;
  pts.reserve(inst.orders.size() + 1);
  pts.push_back(inst.depot);
  for (const auto& o : inst.orders) {
    pts.push_back(o.loc);
  }
  return distance_matrix(pts);
}

DistanceMatrix station_matrix(const Instance& inst) {
  std::vector<Location> pts;
  pts.reserve(inst.stations.size() + 1);
  pts.push_back(inst.depot);
  for (const auto& s : inst.stations) {
    pts.push_back(s.loc);
  }
  return distance_matrix(pts);
}

std::vector<int> feasible_stations(const Order& order, std::span<const Station> stations,
                                   double radius) {
  std::vector<int> ids;
  for (const auto& s : stations) {
    if (euclidean(order.loc, s.loc) <= radius + kBoundarySlack) {
      ids.push_back(s.id);
    }
  }
  std::ranges::sort(ids);
  return ids;
}

double triangle_violation(const DistanceMatrix& d) {
  double worst = 0.0;
  const std::size_t n = d.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w = 0; w < n; ++w) {
        worst = std::max(worst, d(u, w) - (d(u, v) + d(v, w)));
      }
    }
  }
  return worst;
}

}  // namespace sdd
