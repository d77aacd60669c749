#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdd/core.hpp"

namespace sdd {

/// Dense symmetric Euclidean distance matrix, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::vector<double> data);

  std::size_t size() const { return n_; }
  double operator()(std::size_t u, std::size_t v) const { return data_[u * n_ + v]; }
  std::span<const double> row(std::size_t u) const {
    return {data_.data() + u * n_, n_};
  }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

double euclidean(const Location& a, const Location& b);

/// Euclidean distances between all pairs. Throws std::invalid_argument on
/// an empty list or non-finite coordinates.
DistanceMatrix distance_matrix(std::span<const Location> points);

/// Node 0 is the depot, node i+1 is orders[i].
DistanceMatrix order_matrix(const Instance& inst);
/// Node 0 is the depot, node i+1 is stations[i].
DistanceMatrix station_matrix(const Instance& inst);

/// Ids of the stations within `radius` of the order (inclusive, with
/// kBoundarySlack), ascending.
std::vector<int> feasible_stations(const Order& order, std::span<const Station> stations,
                                   double radius);

/// Largest violation of d(u,w) <= d(u,v) + d(v,w) over all triples
/// (0 when the inequality holds everywhere).
double triangle_violation(const DistanceMatrix& d);

}  // namespace sdd
