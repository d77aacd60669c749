#pragma once

// Hand-rolled generators for the property suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "sdd/core.hpp"

namespace sdd::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  // integral coordinates keep hand checks easy and expose ties
  double coord(double side) { return std::round(real(0.0, side)); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct SmallSpec {
  int min_orders = 3;
  int max_orders = 6;
  int max_stations = 3;
  int options = 3;
  double side = 60.0;
  double horizon = 160.0;
  double release_hi = 80.0;
  int max_capacity = 3;
  double radius = 35.0;
};

/// A small instance carrying the data of every model: options with WTP
/// vectors and stations with a radius.
inline Instance small_instance(std::uint64_t seed, const SmallSpec& spec = {}) {
  Gen g(seed);
  Instance inst;
  inst.horizon = spec.horizon;
  inst.depot = {spec.side / 2.0, spec.side / 2.0};
  inst.radius = spec.radius;
  std::vector<double> deadlines;
  double d = 0.0;
  for (int k = 0; k < spec.options; ++k) {
    d += std::round(g.real(20.0, 60.0));
    deadlines.push_back(d);
  }
  inst.options = OptionSet{deadlines};
  const int n = g.integer(spec.min_orders, spec.max_orders);
  for (int i = 0; i < n; ++i) {
    Order o;
    o.id = i + 1;
    o.loc = {g.coord(spec.side), g.coord(spec.side)};
    o.release = std::round(g.real(0.0, spec.release_hi));
    std::vector<double> wtp;
    for (int k = 0; k < spec.options; ++k) {
      wtp.push_back(std::round(g.real(0.0, 50.0)));
    }
    std::ranges::sort(wtp, std::greater<>());
    o.wtp = wtp;
    inst.orders.push_back(o);
  }
  const int m = g.integer(1, spec.max_stations);
  for (int s = 0; s < m; ++s) {
    inst.stations.push_back({s + 1, {g.coord(spec.side), g.coord(spec.side)}, g.integer(0, spec.max_capacity)});
  }
  return validate_instance(inst);
}

}  // namespace sdd::testing
