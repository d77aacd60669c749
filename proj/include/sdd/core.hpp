#pragma once

// Domain types shared by every solver: locations, orders, pickup stations,
// deadline options, release-date distributions and the instance itself.
//
// Time and distance share one unit throughout (a vehicle covers one distance
// unit per time unit).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sdd {

/// Tolerance for time/objective comparisons.
inline constexpr double kEps = 1e-6;
/// Slack for boundary inclusion (radius, triangle inequality).
inline constexpr double kBoundarySlack = 1e-9;

struct Location {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Location&, const Location&) = default;
};

struct PointRelease {
  double t = 0.0;
  friend bool operator==(const PointRelease&, const PointRelease&) = default;
};

struct UniformRelease {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const UniformRelease&, const UniformRelease&) = default;
};

struct DiscreteRelease {
  std::vector<std::pair<double, double>> points;  // (time, probability)
  friend bool operator==(const DiscreteRelease&, const DiscreteRelease&) = default;
};

/// Distribution of an order's release date in the stochastic setting.
using ReleaseDist = std::variant<PointRelease, UniformRelease, DiscreteRelease>;

struct Order {
  int id = 0;
  Location loc;
  double release = 0.0;
  std::optional<std::vector<double>> wtp;  // one entry per deadline option
  std::optional<std::vector<int>> feasible_stations;
  std::optional<ReleaseDist> release_dist;

  friend bool operator==(const Order&, const Order&) = default;
};

struct Station {
  int id = 0;
  Location loc;
  int capacity = 0;  // parcels over the whole horizon; freed space is never reused

  friend bool operator==(const Station&, const Station&) = default;
};

struct OptionSet {
  std::vector<double> deadlines;  // strictly increasing, relative to order time

  friend bool operator==(const OptionSet&, const OptionSet&) = default;
};

struct Instance {
  Location depot;
  std::vector<Order> orders;
  std::vector<Station> stations;
  std::optional<OptionSet> options;
  double horizon = 0.0;
  std::optional<double> radius;
  std::optional<double> big_m;
  std::optional<int> max_trips;

  friend bool operator==(const Instance&, const Instance&) = default;

  std::size_t num_orders() const { return orders.size(); }
  std::size_t num_options() const { return options ? options->deadlines.size() : 0; }

  /// Index of the station with this id, or -1.
  int station_index(int id) const;
  /// Index of the order with this id, or -1.
  int order_index(int id) const;

  /// Filled in by validate_instance; callers may rely on these after validation.
  double penalty() const { return big_m.value_or(horizon); }
  int trip_bound() const;

  /// True when every order carries a WTP vector and options are present.
  bool supports_slots() const;
  /// True when every order has a (possibly empty) feasible-station list.
  bool supports_stations() const;
};

/// Raised for malformed instances. Carries every violation found.
class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A model was requested on an instance that lacks its data, or the
/// configuration is inconsistent (e.g. penalty below the horizon).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive routine was asked to go beyond its size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lists every invariant the instance breaks; empty when valid.
std::vector<std::string> instance_violations(const Instance& inst);

/// Returns the normalized instance: orders and stations sorted by id,
/// feasible stations derived from the radius where not given explicitly,
/// big_m defaulting to the horizon and max_trips to the number of orders.
/// Throws InstanceError listing all violations.
Instance validate_instance(Instance inst);

/// Checks the invariants of a release distribution; empty when valid.
std::vector<std::string> release_dist_violations(const ReleaseDist& dist);

}  // namespace sdd
