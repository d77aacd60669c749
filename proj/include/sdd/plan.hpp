#pragma once

// Canonical plan representation shared by every model, plus the
// constraint-level checker, objective evaluation and service metrics.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdd/core.hpp"

namespace sdd {

enum class ModelKind { F1, F2, F2Lex, F3, F4 };

std::string_view model_name(ModelKind kind);          // "F1", "F2LEX", ...
std::optional<ModelKind> parse_model(std::string_view text);  // case-insensitive
inline bool is_slot_model(ModelKind k) { return k == ModelKind::F2 || k == ModelKind::F2Lex; }
inline bool is_station_model(ModelKind k) { return k == ModelKind::F3 || k == ModelKind::F4; }

/// A closed route. Node ids are order ids (F1/F2) or station ids (F3/F4);
/// 0 is the depot. `end` is always derived from start + route length.
struct Trip {
  std::vector<int> route;
  double start = 0.0;
  double end = 0.0;

  friend bool operator==(const Trip&, const Trip&) = default;
};

struct AssignmentRecord {
  int trip = 0;                      // index into Plan::trips
  std::optional<int> option;         // F2/F2LEX: deadline option index
  std::optional<int> station;        // F3/F4: station id
  double delivery_time = 0.0;        // arrival (F1/F2) or earliest pickup time (F3/F4)

  friend bool operator==(const AssignmentRecord&, const AssignmentRecord&) = default;
};

/// Only nonempty trips are stored; unused trip slots are implicit.
struct Plan {
  ModelKind model = ModelKind::F1;
  std::vector<Trip> trips;
  std::map<int, AssignmentRecord> assignments;  // keyed by order id
  std::vector<int> unserved;                    // ascending order ids

  friend bool operator==(const Plan&, const Plan&) = default;

  std::vector<int> served_ids() const;
};

/// One broken constraint: a tag such as "F1-release", the amount by which
/// it is violated (0 for structural problems) and a human-readable detail.
struct Violation {
  std::string tag;
  double slack = 0.0;
  std::string detail;
};

struct PlanVerdict {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view tag) const;
  std::vector<std::string> tags() const;  // unique, sorted
};

struct CheckOptions {
  /// Executed (simulated) F1 plans: trips may idle between each other and
  /// need not end exactly at the horizon; only end <= horizon is required.
  bool relaxed_chaining = false;
};

/// Recomputes each trip's end from its route, then checks every constraint of
/// the plan's model. Structural malformations are reported as violations.
PlanVerdict validate_plan(const Instance& inst, const Plan& plan, CheckOptions opts = {});

/// F1: served count. F2/F2LEX: revenue. F3/F4: sum over all orders of
/// (pickup time - release), with big_m as the pickup time of unserved orders.
/// Throws std::invalid_argument if the plan does not validate.
double eval_objective(const Instance& inst, const Plan& plan);

struct MetricsReport {
  double distance = 0.0;
  int trips = 0;
  int served = 0;
  double service_rate = 0.0;
  std::optional<double> avg_wait;
  std::optional<double> max_wait;
  std::optional<double> min_wait;
  std::optional<double> wait_variability;  // max_wait - min_wait
};

/// Distance over nonempty trips; waiting times over served orders only.
/// Throws std::invalid_argument if the plan does not validate.
MetricsReport compute_metrics(const Instance& inst, const Plan& plan);

/// Metrics without the validity precondition (used by the checker itself).
MetricsReport metrics_unchecked(const Instance& inst, const Plan& plan);

/// Route length from node ids (order ids or station ids by model).
double trip_length(const Instance& inst, ModelKind model, const std::vector<int>& route);

/// Sets every trip's end to start + route length.
void recompute_ends(const Instance& inst, Plan& plan);

}  // namespace sdd
