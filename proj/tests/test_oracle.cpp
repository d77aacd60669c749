#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "sdd/oracle.hpp"
#include "sdd/plan.hpp"
#include "support.hpp"

namespace sdd {
namespace {

constexpr ModelKind kAll[] = {ModelKind::F1, ModelKind::F2, ModelKind::F2Lex, ModelKind::F3,
                              ModelKind::F4};

TEST(Oracle, EmptyInstance) {
  Instance inst;
  inst.horizon = 250;
  inst.options = OptionSet{{60}};
  inst.radius = 10;
  inst.stations = {{1, {0, 0}, 1}};
  inst = validate_instance(inst);
  for (const ModelKind m : kAll) {
    const SolveReport rep = oracle_solve(inst, m);
    EXPECT_EQ(rep.objective, 0.0) << model_name(m);
    EXPECT_TRUE(rep.optimal);
  }
}

TEST(Oracle, TwoOrderF1Example) {
  Instance inst;
  inst.horizon = 30;
  inst.orders = {{1, {3, 4}, 0, {}, {}, {}}, {2, {-3, 4}, 25, {}, {}, {}}};
  EXPECT_EQ(oracle_solve(validate_instance(inst), ModelKind::F1).objective, 1.0);
  inst.orders[1].release = 20;
  EXPECT_EQ(oracle_solve(validate_instance(inst), ModelKind::F1).objective, 2.0);
}

TEST(Oracle, PlansValidateAndEvaluate) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = testing::small_instance(seed, {.max_orders = 5});
    for (const ModelKind m : kAll) {
      const SolveReport rep = oracle_solve(inst, m);
      ASSERT_TRUE(validate_plan(inst, rep.plan).ok()) << model_name(m) << " seed " << seed;
      EXPECT_EQ(eval_objective(inst, rep.plan), rep.objective);
    }
  }
}

Instance relabel(const Instance& inst) {
  Instance out = inst;
  const int n = static_cast<int>(inst.orders.size());
  for (auto& o : out.orders) {
    o.id = n + 1 - o.id;
  }
  return validate_instance(out);
}

Instance rotate_translate(const Instance& inst, double angle, double dx, double dy) {
  auto move = [&](Location l) {
    const double x = l.x - inst.depot.x;
    const double y = l.y - inst.depot.y;
    return Location{std::cos(angle) * x - std::sin(angle) * y + dx,
                    std::sin(angle) * x + std::cos(angle) * y + dy};
  };
  Instance out = inst;
  out.depot = move(inst.depot);
  for (auto& o : out.orders) {
    o.loc = move(o.loc);
  }
  for (auto& s : out.stations) {
    s.loc = move(s.loc);
  }
  // feasible sets stay explicit, so rounding cannot move a station across the radius
  return validate_instance(out);
}

TEST(Oracle, InvariantUnderRelabelingAndCongruence) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance inst = testing::small_instance(seed, {.max_orders = 5});
    const Instance moved = rotate_translate(inst, 0.3 * static_cast<double>(seed), 17.0, -4.0);
    const Instance renamed = relabel(inst);
    for (const ModelKind m : kAll) {
      const double base = oracle_solve(inst, m).objective;
      EXPECT_NEAR(oracle_solve(renamed, m).objective, base, 1e-6) << model_name(m);
      EXPECT_NEAR(oracle_solve(moved, m).objective, base, 1e-6) << model_name(m);
    }
  }
}

TEST(Oracle, GuardRefuses) {
  testing::SmallSpec spec;
  spec.min_orders = 7;
  spec.max_orders = 7;
  const Instance inst = testing::small_instance(3, spec);
  EXPECT_THROW(oracle_solve(inst, ModelKind::F1), GuardExceeded);
  OracleGuard wide;
  wide.max_orders = 7;
  EXPECT_NO_THROW(oracle_solve(inst, ModelKind::F1, wide));
}

TEST(Oracle, GuardFromEnvironment) {
  ::setenv("SDD_ORACLE_LIMIT", "8", 1);
  EXPECT_EQ(OracleGuard::from_env().max_orders, 8);
  ::setenv("SDD_ORACLE_LIMIT", "4,2,1", 1);
  const OracleGuard g = OracleGuard::from_env();
  EXPECT_EQ(g.max_orders, 4);
  EXPECT_EQ(g.max_stations, 2);
  EXPECT_EQ(g.max_options, 1);
  ::unsetenv("SDD_ORACLE_LIMIT");
  EXPECT_EQ(OracleGuard::from_env().max_orders, 6);
}

TEST(Oracle, MissingModelData) {
  Instance inst;
  inst.horizon = 10;
  inst.orders = {{1, {1, 1}, 0, {}, {}, {}}};
  inst = validate_instance(inst);
  EXPECT_THROW(oracle_solve(inst, ModelKind::F2), ConfigError);
  EXPECT_THROW(oracle_solve(inst, ModelKind::F3), ConfigError);
}

}  // namespace
}  // namespace sdd
