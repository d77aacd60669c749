#pragma once

// Seeded instance generator and the hand-shaped benchmark families.
//
// The generator draws from std::mt19937_64 seeded with the profile seed and
// uses its own uniform mapping (not std::uniform_real_distribution, whose
// output is library specific), so a seed reproduces the same instance with
// any standard library.

#include <cstdint>
#include <optional>
#include <vector>

#include "sdd/core.hpp"

namespace sdd {

struct GeneratorProfile {
  int orders = 8;
  int stations = 0;
  double side = 100.0;
  double alpha = 0.5;  // releases uniform in [0, alpha * horizon]
  double horizon = 250.0;
  std::optional<double> radius;
  std::vector<double> deadlines;  // empty: no slot data
  double wtp_lo = 0.0;
  double wtp_hi = 100.0;
  int capacity = 3;
  std::optional<int> max_trips;
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument on an impossible profile.
Instance gen_instance(const GeneratorProfile& profile);

/// The desk-scale configuration: 8 orders, 3 stations with capacity 3,
/// deadlines {60,120,240}, horizon 250, radius 30, max_trips 4.
GeneratorProfile desk_profile(std::uint64_t seed);

/// Five customers, three capacity-2 stations. With radius 30 each customer
/// reaches exactly one station and four of them share the same one; with
/// radius 40 two of those four also reach a third station.
Instance radius_family(std::uint64_t seed, double radius);

/// Two far, late, valuable orders against six near cheap ones: revenue
/// favours the far pair, the served count favours the near group.
Instance far_pair_family(std::uint64_t seed);

/// Two orders sitting on collinear stations S1 (10,0) and S2 (20,0).
Instance collinear_stations();

/// Every order located at the depot with release 0.
Instance all_at_depot(int orders, const std::vector<double>& deadlines, std::uint64_t seed);

/// Stochastic family: a near cluster releasing early and a far cluster
/// releasing late, each order with a uniform or discrete release law.
Instance two_cluster(std::uint64_t seed);

}  // namespace sdd
