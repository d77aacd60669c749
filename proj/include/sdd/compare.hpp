#pragma once

// Side-by-side comparison of the five models on one instance.

#include <optional>
#include <string>
#include <vector>

#include "sdd/core.hpp"
#include "sdd/io.hpp"
#include "sdd/plan.hpp"
#include "sdd/solve.hpp"

namespace sdd {

struct CompareRow {
  ModelKind model = ModelKind::F1;
  std::optional<std::string> error;  // set when the model could not run
  double objective = 0.0;
  bool optimal = false;
  MetricsReport metrics;
};

/// One row per model in the fixed order F1, F2, F2LEX, F3, F4. The models
/// are solved concurrently; a model whose data is missing gets an error row.
std::vector<CompareRow> compare(const Instance& inst, const SolverConfig& cfg = {});

/// Fixed-width text table, numbers with 6 decimals.
std::string format_table(const std::vector<CompareRow>& rows);

/// Columns: model,objective,served,service_rate,trips,distance,avg_wait,
/// max_wait,wait_variability,optimal,error
std::string rows_csv(const std::vector<CompareRow>& rows);

Json rows_json(const std::vector<CompareRow>& rows);

/// Plain-language notes on the served/distance pattern between rows.
std::vector<std::string> pattern_summary(const std::vector<CompareRow>& rows);

/// Fixed 6-decimal rendering used by every text and CSV output.
std::string fmt6(double v);

}  // namespace sdd
