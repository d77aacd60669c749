#pragma once

// Rolling-horizon simulation of the release-date orienteering setting when
// release dates are uncertain. A single vehicle waits at the depot; at each
// point of a Δ-grid where it is idle, a policy either waits or dispatches a
// trip serving some released orders. Trips cannot be recalled.
//
// Random streams: every stream is std::mt19937_64 seeded through
// std::seed_seq{master seed (low, high word), replication, salt}; salt 0
// draws the scenario, salt p+1 feeds policy p. Results therefore do not
// depend on how replications are spread over threads.

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sdd/core.hpp"
#include "sdd/plan.hpp"

namespace sdd {

using Rng = std::mt19937_64;

/// Realized release time per order, indexed like the validated instance.
struct Scenario {
  std::vector<double> release;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Myopic {};
struct Threshold {
  int theta = 1;
};
struct ExpectedValue {};
struct Consensus {
  int samples = 1;
};
using Policy = std::variant<Myopic, Threshold, ExpectedValue, Consensus>;

std::string policy_name(const Policy& p);
/// Throws std::invalid_argument for nonpositive parameters.
void check_policy(const Policy& p);

struct SimConfig {
  double grid_step = 5.0;
  int replications = 1;
  std::uint64_t master_seed = 0;
  int max_orders = 12;  // episodes solve F1 repeatedly; larger instances are refused
  unsigned threads = 0;  // 0: hardware concurrency
};

/// A policy that picked an unreleased or delivered order, or a trip that
/// cannot return by the horizon.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// What a policy sees at an epoch. Ids are ascending.
struct DecisionState {
  double t = 0.0;
  std::vector<int> released;  // released and undelivered
  std::vector<int> pending;   // not yet released
};

/// Order ids to dispatch now; empty means wait.
using Decision = std::vector<int>;
using DecideFn = std::function<Decision(const DecisionState&)>;

struct TraceEntry {
  double t = 0.0;
  Decision action;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct EpisodeResult {
  int served = 0;
  Plan plan;  // F1 plan in real time; trips may leave gaps between them
  std::vector<TraceEntry> trace;
};

/// Stream for (master seed, replication, salt).
Rng derive_stream(std::uint64_t master_seed, std::uint64_t replication, std::uint64_t salt);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_draw(Rng& rng);

double sample_release(const ReleaseDist& dist, Rng& rng);
/// Draw conditioned on release > t; if the law has no mass after t the
/// order is taken to release at t.
double sample_release_after(const ReleaseDist& dist, double t, Rng& rng);
/// E[R | R > t] under the same boundary convention.
double mean_release_after(const ReleaseDist& dist, double t);

/// Throws ConfigError when an order has no release distribution.
Scenario sample_scenario(const Instance& inst, Rng& rng);

/// The instance with its releases replaced by the scenario's.
Instance realized_instance(const Instance& inst, const Scenario& sc);

/// Solves F1 from time t with the given release estimate for every order in
/// `state` (released ones are taken as released at t) and returns the first
/// action: the earliest trip if all its orders are released, else wait.
/// `objective` receives the served count of that solve when non-null.
Decision reoptimize(const Instance& inst, const DecisionState& state,
                    const std::vector<double>& estimate, int* objective = nullptr);

/// Releases for the pending orders drawn conditionally on release > t;
/// indexed like the instance, released orders set to t.
std::vector<double> sample_conditional(const Instance& inst, const DecisionState& state, Rng& rng);

Decision policy_decide(const Instance& inst, const Policy& policy, const DecisionState& state,
                       double grid_step, Rng& rng);

/// Runs the epoch loop. The decision function is consulted only at epochs
/// with at least one released undelivered order.
EpisodeResult run_episode(const Instance& inst, const Scenario& sc, const DecideFn& decide,
                          const SimConfig& cfg);
EpisodeResult run_episode(const Instance& inst, const Scenario& sc, const Policy& policy,
                          const SimConfig& cfg, Rng& policy_rng);

struct ReplicationResult {
  int replication = 0;
  Scenario scenario;
  int pi_bound = 0;
  std::vector<int> served;  // per policy
  std::vector<std::vector<TraceEntry>> traces;

  friend bool operator==(const ReplicationResult&, const ReplicationResult&) = default;
};

struct SimReport {
  std::vector<std::string> policies;
  std::vector<ReplicationResult> replications;
  std::vector<double> mean_served;  // per policy
  double mean_pi_bound = 0.0;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Throws GuardExceeded above cfg.max_orders, ConfigError on missing
/// distributions or a nonpositive grid step.
SimReport simulate(const Instance& inst, const std::vector<Policy>& policies,
                   const SimConfig& cfg);

struct PairedDifference {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean and standard error of served(a) - served(b) over replications.
PairedDifference paired_difference(const SimReport& rep, std::size_t a, std::size_t b);

}  // namespace sdd
