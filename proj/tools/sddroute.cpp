// sddroute: command-line front end for the same-day delivery solvers.
//
// Exit codes: 0 ok, 1 infeasible plan / failed validation, 2 malformed
// input or usage error, 3 size guard exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sdd/compare.hpp"
#include "sdd/dynamics.hpp"
#include "sdd/generator.hpp"
#include "sdd/io.hpp"
#include "sdd/oracle.hpp"
#include "sdd/plan.hpp"
#include "sdd/solve.hpp"

namespace {

using namespace sdd;

enum Exit : int { kOk = 0, kFailed = 1, kMalformed = 2, kGuard = 3 };

struct Options {
  std::string model = "f1";
  std::string instance;
  std::string plan;
  std::string out;
  std::string csv;
  std::optional<int> max_trips;
  std::optional<double> big_m;
  std::optional<double> time_limit;
  std::vector<std::string> policies{"myopic"};
  int theta = 1;
  int samples = 16;
  int reps = 100;
  double grid = 5.0;
  std::uint64_t seed = 1;

  // gen
  std::string family = "random";
  GeneratorProfile profile;
  std::string deadlines;
};

ModelKind model_of(const Options& o) {
  const auto m = parse_model(o.model);
  if (!m) {
    throw FormatError("unknown model \"" + o.model + "\"");
  }
  return *m;
}

Instance instance_of(const Options& o) {
  Instance inst = load_instance(o.instance);
  if (o.big_m) {
    inst.big_m = *o.big_m;
  }
  if (o.max_trips) {
    inst.max_trips = *o.max_trips;
  }
  return inst;
}

SolverConfig config_of(const Options& o) {
  SolverConfig cfg;
  cfg.max_trips = o.max_trips;
  cfg.time_limit = o.time_limit;
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << text;
}

void print_summary(const Instance& inst, const SolveReport& rep) {
  std::cout << model_name(rep.model) << " objective " << fmt6(rep.objective) << ", served "
            << rep.served() << "/" << inst.num_orders() << ", trips " << rep.plan.trips.size()
            << (rep.optimal ? ", optimal" : ", not proven optimal (gap " + fmt6(rep.bound_gap) + ")")
            << ", " << rep.nodes_explored << " nodes, " << fmt6(rep.runtime_seconds) << " s\n";
  for (std::size_t k = 0; k < rep.plan.trips.size(); ++k) {
    const auto& t = rep.plan.trips[k];
    std::cout << "  trip " << k << " [" << fmt6(t.start) << ", " << fmt6(t.end) << "]:";
    for (const int v : t.route) {
      std::cout << ' ' << v;
    }
    std::cout << '\n';
  }
}

std::string metrics_csv(const SolveReport& rep, const MetricsReport& m) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt6(*v) : std::string(); };
  std::ostringstream out;
  out << "model,objective,served,service_rate,trips,distance,avg_wait,max_wait,wait_variability,"
         "optimal\n"
      << model_name(rep.model) << ',' << fmt6(rep.objective) << ',' << m.served << ','
      << fmt6(m.service_rate) << ',' << m.trips << ',' << fmt6(m.distance) << ','
      << opt(m.avg_wait) << ',' << opt(m.max_wait) << ',' << opt(m.wait_variability) << ','
      << (rep.optimal ? "true" : "false") << '\n';
  return out.str();
}

int emit_report(const Options& o, const Instance& inst, const SolveReport& rep) {
  print_summary(inst, rep);
  if (!o.out.empty()) {
    write_json_file(o.out, solve_report_to_json(inst, rep));
  }
  if (!o.csv.empty()) {
    write_text(o.csv, metrics_csv(rep, metrics_unchecked(inst, rep.plan)));
  }
  return kOk;
}

int cmd_solve(const Options& o) {
  const Instance inst = instance_of(o);
  return emit_report(o, inst, solve(inst, model_of(o), config_of(o)));
}

int cmd_oracle(const Options& o) {
  const Instance inst = instance_of(o);
  return emit_report(o, inst, oracle_solve(inst, model_of(o), OracleGuard::from_env()));
}

int cmd_validate(const Options& o) {
  Instance raw;
  try {
    raw = instance_from_json(read_json_file(o.instance));
  } catch (const Json::exception& e) {
    throw FormatError(e.what());
  }
  const auto violations = instance_violations(raw);
  if (violations.empty()) {
    std::cout << "valid: " << raw.num_orders() << " orders, " << raw.stations.size()
              << " stations\n";
    return kOk;
  }
  for (const auto& v : violations) {
    std::cout << v << '\n';
  }
  return kFailed;
}

int cmd_check_plan(const Options& o) {
  const Instance inst = instance_of(o);
  const Plan plan = load_plan(o.plan);
  const PlanVerdict verdict = validate_plan(inst, plan);
  if (!verdict.ok()) {
    for (const auto& v : verdict.violations) {
      std::cout << v.tag << " (slack " << fmt6(v.slack) << "): " << v.detail << '\n';
    }
    return kFailed;
  }
  const MetricsReport m = compute_metrics(inst, plan);
  std::cout << "ok: " << model_name(plan.model) << " objective " << fmt6(eval_objective(inst, plan))
            << ", served " << m.served << ", distance " << fmt6(m.distance) << '\n';
  return kOk;
}

int cmd_gen(Options o) {
  Instance inst;
  const std::string& f = o.family;
  if (f == "random") {
    o.profile.seed = o.seed;
    if (!o.deadlines.empty()) {
      std::stringstream ss(o.deadlines);
      for (std::string item; std::getline(ss, item, ',');) {
        try {
          o.profile.deadlines.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw FormatError("bad deadline \"" + item + "\"");
        }
      }
    }
    if (o.max_trips) {
      o.profile.max_trips = o.max_trips;
    }
    inst = gen_instance(o.profile);
  } else if (f == "desk") {
    inst = gen_instance(desk_profile(o.seed));
  } else if (f == "radius30" || f == "radius40") {
    inst = radius_family(o.seed, f == "radius30" ? 30.0 : 40.0);
  } else if (f == "far-pair") {
    inst = far_pair_family(o.seed);
  } else if (f == "collinear") {
    inst = collinear_stations();
  } else if (f == "all-at-depot") {
    inst = all_at_depot(o.profile.orders, {60.0, 120.0, 240.0}, o.seed);
  } else if (f == "two-cluster") {
    inst = two_cluster(o.seed);
  } else {
    throw FormatError("unknown family \"" + f + "\"");
  }
  // refuse to write something the loader would reject
  validate_instance(inst);
  const std::string text = instance_to_json(inst).dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(o.out, text);
  }
  return kOk;
}

int cmd_compare(const Options& o) {
  const Instance inst = instance_of(o);
  const auto rows = compare(inst, config_of(o));
  std::cout << format_table(rows);
  for (const auto& note : pattern_summary(rows)) {
    std::cout << "# " << note << '\n';
  }
  if (!o.csv.empty()) {
    write_text(o.csv, rows_csv(rows));
  }
  if (!o.out.empty()) {
    write_json_file(o.out, rows_json(rows));
  }
  return kOk;
}

int cmd_simulate(const Options& o) {
  const Instance inst = instance_of(o);
  std::vector<Policy> policies;
  for (const auto& name : o.policies) {
    if (name == "myopic") {
      policies.emplace_back(Myopic{});
    } else if (name == "threshold") {
      policies.emplace_back(Threshold{o.theta});
    } else if (name == "expected") {
      policies.emplace_back(ExpectedValue{});
    } else if (name == "consensus") {
      policies.emplace_back(Consensus{o.samples});
    } else {
      throw FormatError("unknown policy \"" + name + "\"");
    }
    check_policy(policies.back());
  }
  SimConfig cfg;
  cfg.grid_step = o.grid;
  cfg.replications = o.reps;
  cfg.master_seed = o.seed;
  const SimReport rep = simulate(inst, policies, cfg);
  const std::string csv = sim_report_csv(rep);
  if (o.csv.empty()) {
    std::cout << csv;
  } else {
    write_text(o.csv, csv);
  }
  if (!o.out.empty()) {
    write_json_file(o.out, sim_report_to_json(rep));
  }
  std::ostream& note = o.csv.empty() ? std::cerr : std::cout;
  note << "mean perfect-information bound " << fmt6(rep.mean_pi_bound) << '\n';
  for (std::size_t p = 0; p < rep.policies.size(); ++p) {
    note << "mean served " << rep.policies[p] << ' ' << fmt6(rep.mean_served[p]) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Same-day delivery routing: exact solvers, oracle, comparison and simulation"};
  app.require_subcommand(1);
  Options o;

  auto add_instance = [&](CLI::App* c) {
    c->add_option("--instance", o.instance, "Instance JSON file")->required();
  };
  auto add_solver = [&](CLI::App* c) {
    c->add_option("--max-trips", o.max_trips, "Trip bound");
    c->add_option("--big-m", o.big_m, "Penalty for unserved orders (station models)");
    c->add_option("--time-limit", o.time_limit, "Search time limit in seconds");
  };
  const std::vector<std::string> models{"f1", "f2", "f2lex", "f3", "f4"};

  auto* solve_cmd = app.add_subcommand("solve", "Solve one model exactly");
  solve_cmd->add_option("--model", o.model, "Model")->check(CLI::IsMember(models, CLI::ignore_case));
  add_instance(solve_cmd);
  add_solver(solve_cmd);
  solve_cmd->add_option("--out", o.out, "SolveReport JSON output");
  solve_cmd->add_option("--csv", o.csv, "Metrics CSV output");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive reference solve (small instances)");
  oracle_cmd->add_option("--model", o.model, "Model")->check(CLI::IsMember(models, CLI::ignore_case));
  add_instance(oracle_cmd);
  oracle_cmd->add_option("--out", o.out, "SolveReport JSON output");
  oracle_cmd->add_option("--csv", o.csv, "Metrics CSV output");

  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  add_instance(validate_cmd);

  auto* check_cmd = app.add_subcommand("check-plan", "Check a plan against an instance");
  add_instance(check_cmd);
  check_cmd->add_option("--plan", o.plan, "Plan JSON file")->required();
  check_cmd->add_option("--big-m", o.big_m, "Penalty for unserved orders");

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--family", o.family, "random, desk, radius30, radius40, far-pair, collinear, all-at-depot, two-cluster");
  gen_cmd->add_option("--seed", o.seed, "Seed");
  gen_cmd->add_option("--out", o.out, "Output file (default: standard output)");
  gen_cmd->add_option("--orders", o.profile.orders, "Number of orders")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--stations", o.profile.stations, "Number of stations")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--side", o.profile.side, "Square side");
  gen_cmd->add_option("--alpha", o.profile.alpha, "Release window fraction")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--horizon", o.profile.horizon, "Horizon");
  gen_cmd->add_option("--radius", o.profile.radius, "Station radius");
  gen_cmd->add_option("--deadlines", o.deadlines, "Comma-separated option deadlines");
  gen_cmd->add_option("--wtp-lo", o.profile.wtp_lo, "Lowest WTP");
  gen_cmd->add_option("--wtp-hi", o.profile.wtp_hi, "Highest WTP");
  gen_cmd->add_option("--capacity", o.profile.capacity, "Station capacity");
  gen_cmd->add_option("--max-trips", o.max_trips, "Trip bound stored in the instance");

  auto* compare_cmd = app.add_subcommand("compare", "Solve all five models and tabulate");
  add_instance(compare_cmd);
  add_solver(compare_cmd);
  compare_cmd->add_option("--out", o.out, "JSON output");
  compare_cmd->add_option("--csv", o.csv, "CSV output");

  auto* sim_cmd = app.add_subcommand("simulate", "Simulate dispatch policies under random releases");
  add_instance(sim_cmd);
  sim_cmd->add_option("--policy", o.policies, "myopic, threshold, expected, consensus (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember({"myopic", "threshold", "expected", "consensus"}));
  sim_cmd->add_option("--theta", o.theta, "Threshold policy minimum load")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--samples", o.samples, "Consensus scenarios per decision")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--reps", o.reps, "Replications")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--grid", o.grid, "Decision grid step")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", o.seed, "Master seed");
  sim_cmd->add_option("--out", o.out, "SimReport JSON output");
  sim_cmd->add_option("--csv", o.csv, "SimReport CSV output (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*solve_cmd) return cmd_solve(o);
    if (*oracle_cmd) return cmd_oracle(o);
    if (*validate_cmd) return cmd_validate(o);
    if (*check_cmd) return cmd_check_plan(o);
    if (*gen_cmd) return cmd_gen(o);
    if (*compare_cmd) return cmd_compare(o);
    if (*sim_cmd) return cmd_simulate(o);
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return kGuard;
  } catch (const InstanceError& e) {
    std::cerr << "invalid instance:\n";
    for (const auto& v : e.violations()) {
      std::cerr << "  " << v << '\n';
    }
    return kMalformed;
  } catch (const FormatError& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kMalformed;
  } catch (const ProtocolError& e) {
    std::cerr << "policy error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kMalformed;
}
