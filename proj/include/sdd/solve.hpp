#pragma once

// Exact solvers for the four delivery models. All of them search over
// ordered sequences of trips with explicit routes and schedules; the big-M
// timing constraints of the mathematical programs become direct schedule
// computations here.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sdd/core.hpp"
#include "sdd/plan.hpp"
#include "sdd/tsp.hpp"

namespace sdd {

struct SolverConfig {
  std::optional<int> max_trips;            // defaults to the instance's trip bound
  std::optional<double> time_limit;        // seconds
  std::optional<std::uint64_t> node_limit;
  std::size_t held_karp_limit = kHeldKarpLimit;
};

struct StationVisit {
  int station = 0;
  double arrival = 0.0;
};

/// Per-trip station visits and per-order pickup data of a station plan.
struct StationPlanExtras {
  std::vector<std::vector<StationVisit>> trips;
  std::map<int, StationVisit> pickups;  // order id -> (station, earliest pickup time)
};

struct SolveReport {
  ModelKind model = ModelKind::F1;
  double objective = 0.0;
  Plan plan;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
  double runtime_seconds = 0.0;
  double bound_gap = 0.0;  // 0 when optimal
  std::optional<StationPlanExtras> station_extras;

  int served() const { return static_cast<int>(plan.assignments.size()); }
};

struct SlotChoice {
  int order = 0;
  int option = 0;
  double price = 0.0;  // equals the customer's WTP for the chosen option
};

struct SlotSolution {
  SolveReport report;
  std::vector<SlotChoice> choices;  // ascending order id
  double revenue() const { return report.objective; }
};

/// Orienteering with release dates: maximize served orders with back-to-back
/// trips ending at the horizon. Ties: fewer trips, shorter distance, then the
/// lexicographically smallest served-id list.
SolveReport solve_f1(const Instance& inst, const SolverConfig& cfg = {});

/// Deadline-option selection maximizing revenue (price = WTP).
SlotSolution solve_f2(const Instance& inst, const SolverConfig& cfg = {});

/// Served count first, revenue second.
SlotSolution solve_f2_lex(const Instance& inst, const SolverConfig& cfg = {});

/// Pickup stations, one station per trip (direct trips).
SolveReport solve_f3(const Instance& inst, const SolverConfig& cfg = {});

/// Pickup stations, routed trips through several stations.
SolveReport solve_f4(const Instance& inst, const SolverConfig& cfg = {});

/// Dispatches on the model; slot models return their SolveReport part.
SolveReport solve(const Instance& inst, ModelKind model, const SolverConfig& cfg = {});

/// Station visits and pickups derived from a station plan.
StationPlanExtras station_extras(const Instance& inst, const Plan& plan);

/// Option/price per served order of a slot plan.
std::vector<SlotChoice> slot_choices(const Instance& inst, const Plan& plan);

}  // namespace sdd
