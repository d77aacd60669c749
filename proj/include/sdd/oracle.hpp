#pragma once

// Brute-force reference solvers. Every candidate plan (ordered trips, every
// visiting order within a trip, every option/station choice) is built,
// checked with validate_plan and scored with eval_objective; the best one
// under the model's tie-break wins. Only for tiny instances.

#include <cstdint>

#include "sdd/core.hpp"
#include "sdd/plan.hpp"
#include "sdd/solve.hpp"

namespace sdd {

struct OracleGuard {
  int max_orders = 6;
  int max_stations = 3;
  int max_options = 3;

  /// Defaults overridden by SDD_ORACLE_LIMIT ("orders" or
  /// "orders,stations,options").
  static OracleGuard from_env();
};

/// Exact optimum by complete enumeration. Throws GuardExceeded beyond the
/// guard and ConfigError when the instance lacks the model's data.
/// `nodes_explored` counts the candidate plans checked.
SolveReport oracle_solve(const Instance& inst, ModelKind model, const OracleGuard& guard = {});

}  // namespace sdd
