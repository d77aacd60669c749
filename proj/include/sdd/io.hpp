#pragma once

// JSON file formats: instances, plans and solver reports.

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sdd/core.hpp"
#include "sdd/dynamics.hpp"
#include "sdd/plan.hpp"
#include "sdd/solve.hpp"

namespace sdd {

using Json = nlohmann::ordered_json;

/// Malformed document: bad JSON, wrong types, missing or unknown keys.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

Plan plan_from_json(const Json& j);
Json plan_to_json(const Plan& plan);

Json metrics_to_json(const MetricsReport& m);
Json solve_report_to_json(const Instance& inst, const SolveReport& rep);

/// Per-replication rows plus aggregates.
Json sim_report_to_json(const SimReport& rep);
/// Columns: replication,policy,served,pi_bound
std::string sim_report_csv(const SimReport& rep);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Parses and validates; throws FormatError or InstanceError.
Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& inst);

Plan load_plan(const std::filesystem::path& path);

}  // namespace sdd
