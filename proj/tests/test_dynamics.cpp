#include <gtest/gtest.h>

#include "sdd/dynamics.hpp"
#include "sdd/generator.hpp"
#include "sdd/oracle.hpp"
#include "sdd/solve.hpp"

namespace sdd {
namespace {

Instance point_instance(std::vector<std::pair<Location, double>> orders, double horizon = 250) {
  Instance inst;
  inst.horizon = horizon;
  int id = 1;
  for (const auto& [loc, t] : orders) {
    inst.orders.push_back({id++, loc, t, {}, {}, PointRelease{t}});
  }
  return validate_instance(inst);
}

TEST(Sampling, PointDistributionsAreExact) {
  const Instance inst = point_instance({{{1, 1}, 10}, {{2, 2}, 35.5}});
  Rng rng = derive_stream(1, 0, 0);
  EXPECT_EQ(sample_scenario(inst, rng).release, (std::vector<double>{10, 35.5}));
}

TEST(Sampling, UniformSupport) {
  Rng rng = derive_stream(2, 0, 0);
  for (int i = 0; i < 5000; ++i) {
    const double v = sample_release(UniformRelease{0, 120}, rng);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 120.0);
  }
}

TEST(Sampling, DiscreteMean) {
  Rng rng = derive_stream(3, 0, 0);
  const ReleaseDist d = DiscreteRelease{{{10, 0.5}, {20, 0.5}}};
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double v = sample_release(d, rng);
    ASSERT_TRUE(v == 10.0 || v == 20.0);
    sum += v;
  }
  EXPECT_NEAR(sum / 10000.0, 15.0, 0.5);
}

TEST(Sampling, ConditionalDraws) {
  Rng rng = derive_stream(4, 0, 0);
  for (int i = 0; i < 2000; ++i) {
    const double u = sample_release_after(UniformRelease{0, 120}, 90, rng);
    ASSERT_GE(u, 90.0);
    ASSERT_LE(u, 120.0);
    EXPECT_EQ(sample_release_after(DiscreteRelease{{{10, 0.5}, {20, 0.5}}}, 12, rng), 20.0);
  }
  // nothing left after t: released at t
  EXPECT_EQ(sample_release_after(UniformRelease{0, 50}, 60, rng), 60.0);
  EXPECT_EQ(sample_release_after(PointRelease{5}, 60, rng), 60.0);
  EXPECT_EQ(mean_release_after(UniformRelease{0, 120}, 60), 90.0);
  EXPECT_EQ(mean_release_after(DiscreteRelease{{{10, 0.25}, {20, 0.25}, {40, 0.5}}}, 15), 100.0 / 3.0);
  EXPECT_EQ(mean_release_after(PointRelease{5}, 60), 60.0);
}

TEST(Sampling, MissingDistribution) {
  Instance inst;
  inst.horizon = 10;
  inst.orders = {{1, {1, 1}, 0, {}, {}, {}}};
  inst = validate_instance(inst);
  Rng rng = derive_stream(1, 0, 0);
  EXPECT_THROW(sample_scenario(inst, rng), ConfigError);
  EXPECT_THROW(simulate(inst, {Myopic{}}, {}), ConfigError);
}

TEST(Streams, DependOnEveryComponent) {
  Rng a = derive_stream(7, 1, 0);
  Rng b = derive_stream(7, 1, 0);
  Rng c = derive_stream(7, 2, 0);
  Rng d = derive_stream(7, 1, 1);
  Rng e = derive_stream(7ULL << 32, 1, 0);
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
  EXPECT_NE(va, d());
  EXPECT_NE(va, e());
}

TEST(Episode, NoOrders) {
  const Instance inst = point_instance({});
  Rng rng = derive_stream(1, 0, 1);
  const EpisodeResult r = run_episode(inst, Scenario{}, Myopic{}, {.grid_step = 1.0}, rng);
  EXPECT_EQ(r.served, 0);
  EXPECT_TRUE(r.plan.trips.empty());
}

TEST(Episode, MyopicOneOrder) {
  const Instance inst = point_instance({{{3, 4}, 10}});
  Rng srng = derive_stream(1, 0, 0);
  const Scenario sc = sample_scenario(inst, srng);
  Rng rng = derive_stream(1, 0, 1);
  const EpisodeResult r = run_episode(inst, sc, Myopic{}, {.grid_step = 1.0}, rng);
  EXPECT_EQ(r.served, 1);
  ASSERT_EQ(r.plan.trips.size(), 1U);
  EXPECT_EQ(r.plan.trips[0].start, 10.0);
  ASSERT_EQ(r.trace.size(), 1U);
  EXPECT_EQ(r.trace[0], (TraceEntry{10.0, {1}}));
  EXPECT_TRUE(validate_plan(realized_instance(inst, sc), r.plan, {.relaxed_chaining = true}).ok());
}

TEST(Episode, ProtocolViolations) {
  const Instance inst = point_instance({{{3, 4}, 10}, {{30, 40}, 0}}, 60);
  const Scenario sc{{10, 0}};
  const SimConfig cfg{.grid_step = 1.0};
  // order 1 is not released at t = 0
  EXPECT_THROW(run_episode(inst, sc, [](const DecisionState&) { return Decision{1}; }, cfg),
               ProtocolError);
  // order 2 needs 100 time units, the horizon is 60
  EXPECT_THROW(run_episode(inst, sc, [](const DecisionState&) { return Decision{2}; }, cfg),
               ProtocolError);
  EXPECT_THROW(run_episode(inst, sc, [](const DecisionState&) { return Decision{2, 2}; }, cfg),
               ProtocolError);
  // delivering an order twice
  int calls = 0;
  EXPECT_THROW(run_episode(inst, Scenario{{0, 0}},
                           [&](const DecisionState&) { return ++calls == 1 ? Decision{1} : Decision{1}; },
                           cfg),
               ProtocolError);
}

TEST(Episode, VehicleReturnsBeforeNextDecision) {
  const Instance inst = point_instance({{{0, 7}, 0}, {{0, 9}, 1}});
  const Scenario sc{{0, 1}};
  std::vector<double> times;
  const EpisodeResult r = run_episode(
      inst, sc,
      [&](const DecisionState& s) {
        times.push_back(s.t);
        return s.released;
      },
      {.grid_step = 5.0});
  // first trip 0..14, next grid point >= 14 is 15
  EXPECT_EQ(times, (std::vector<double>{0.0, 15.0}));
  EXPECT_EQ(r.served, 2);
}

TEST(Policies, ThresholdOneEqualsMyopic) {
  const Instance inst = validate_instance(two_cluster(11));
  Rng rng = derive_stream(5, 0, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const Scenario sc = sample_scenario(inst, rng);
    Rng a = derive_stream(5, rep, 1);
    Rng b = derive_stream(5, rep, 1);
    const auto m = run_episode(inst, sc, Myopic{}, {}, a);
    const auto t = run_episode(inst, sc, Threshold{1}, {}, b);
    EXPECT_EQ(m.trace, t.trace);
  }
}

TEST(Policies, ThresholdWaitsForLoad) {
  const Instance inst = point_instance({{{3, 4}, 0}, {{-3, 4}, 20}});
  const Scenario sc{{0, 20}};
  Rng rng = derive_stream(1, 0, 1);
  const auto r = run_episode(inst, sc, Threshold{2}, {.grid_step = 5.0}, rng);
  ASSERT_FALSE(r.plan.trips.empty());
  EXPECT_EQ(r.plan.trips[0].start, 20.0);
  EXPECT_EQ(r.served, 2);
}

TEST(Policies, ThresholdDispatchesBeforeExpiry) {
  // the only order expires if the vehicle waits one more step
  const Instance inst = point_instance({{{3, 4}, 0}}, 14);
  Rng rng = derive_stream(1, 0, 1);
  const auto r = run_episode(inst, Scenario{{0}}, Threshold{5}, {.grid_step = 5.0}, rng);
  EXPECT_EQ(r.served, 1);
  EXPECT_EQ(r.plan.trips.at(0).start, 0.0);
}

TEST(Policies, EveryPolicyShipsEverythingWhenNothingIsLeftToLearn) {
  const Instance inst = point_instance({{{3, 4}, 0}, {{-3, 4}, 0}, {{10, 10}, 0}}, 10000);
  DecisionState state;
  state.t = 0;
  state.released = {1, 2, 3};
  Rng rng = derive_stream(1, 0, 1);
  for (const Policy& p : std::vector<Policy>{Myopic{}, Threshold{3}, ExpectedValue{}, Consensus{4}}) {
    EXPECT_EQ(policy_decide(inst, p, state, 5.0, rng), (Decision{1, 2, 3})) << policy_name(p);
  }
  // waiting can only lose here: the oracle confirms the whole set in one trip
  EXPECT_EQ(oracle_solve(inst, ModelKind::F1).objective, 3.0);
}

TEST(Policies, ConsensusOfOneIsThatScenario) {
  const Instance inst = validate_instance(two_cluster(4));
  Rng srng = derive_stream(9, 0, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const Scenario sc = sample_scenario(inst, srng);
    Rng a = derive_stream(9, rep, 3);
    Rng b = derive_stream(9, rep, 3);
    const auto consensus = run_episode(inst, sc, Consensus{1}, {}, a);
    const auto single = run_episode(
        inst, sc,
        [&](const DecisionState& s) { return reoptimize(inst, s, sample_conditional(inst, s, b)); },
        {});
    EXPECT_EQ(consensus.trace, single.trace);
  }
}

TEST(Policies, BadParameters) {
  EXPECT_THROW(check_policy(Threshold{0}), std::invalid_argument);
  EXPECT_THROW(check_policy(Consensus{-1}), std::invalid_argument);
  EXPECT_EQ(policy_name(Consensus{16}), "consensus(16)");
}

TEST(Simulate, BoundAndDeterminism) {
  const Instance inst = validate_instance(two_cluster(2));
  const std::vector<Policy> policies{Myopic{}, Threshold{2}, ExpectedValue{}, Consensus{4}};
  SimConfig cfg;
  cfg.replications = 12;
  cfg.master_seed = 42;
  cfg.threads = 1;
  const SimReport serial = simulate(inst, policies, cfg);
  cfg.threads = 4;
  const SimReport parallel = simulate(inst, policies, cfg);
  EXPECT_EQ(serial, parallel);
  for (const auto& r : serial.replications) {
    for (const int s : r.served) {
      EXPECT_LE(s, r.pi_bound);
    }
    EXPECT_EQ(r.pi_bound, solve_f1(realized_instance(inst, r.scenario)).objective);
  }
  EXPECT_EQ(serial.policies.size(), 4U);
  EXPECT_LE(serial.mean_served[0], serial.mean_pi_bound);
}

TEST(Simulate, Guards) {
  Instance big;
  big.horizon = 100;
  for (int i = 1; i <= 13; ++i) {
    big.orders.push_back({i, {1, 1}, 0, {}, {}, PointRelease{0}});
  }
  big = validate_instance(big);
  EXPECT_THROW(simulate(big, {Myopic{}}, {}), GuardExceeded);
  const Instance inst = validate_instance(two_cluster(1));
  EXPECT_THROW(simulate(inst, {Myopic{}}, {.grid_step = 0}), ConfigError);
  EXPECT_THROW(simulate(inst, {Myopic{}}, {.replications = 0}), ConfigError);
}

TEST(Simulate, PairedDifference) {
  SimReport rep;
  rep.policies = {"a", "b"};
  rep.replications = {{0, {}, 3, {3, 1}, {}}, {1, {}, 3, {2, 2}, {}}, {2, {}, 3, {3, 2}, {}}};
  const auto d = paired_difference(rep, 0, 1);
  EXPECT_DOUBLE_EQ(d.mean, 1.0);
  EXPECT_DOUBLE_EQ(d.std_error, std::sqrt(1.0 / 3.0));
}

}  // namespace
}  // namespace sdd
