// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "sdd/compare.hpp"
#include "sdd/dynamics.hpp"
#include "sdd/generator.hpp"
#include "sdd/geometry.hpp"
#include "sdd/oracle.hpp"
#include "sdd/plan.hpp"
#include "sdd/solve.hpp"
#include "sdd/tsp.hpp"
#include "support.hpp"

namespace {

using namespace sdd;
using Clock = std::chrono::steady_clock;

constexpr double kTol = 1e-6;
constexpr ModelKind kModels[] = {ModelKind::F1, ModelKind::F2, ModelKind::F2Lex, ModelKind::F3,
                                 ModelKind::F4};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (pass) {
      note << why;
    }
    pass = false;
  }
};

int failures = 0;

void report(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  std::printf("%s [%d] %s: %s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.note.str().c_str());
  std::fflush(stdout);
  if (!out.pass) {
    ++failures;
  }
}

std::string tag(std::uint64_t seed, ModelKind m) {
  return "seed " + std::to_string(seed) + " " + std::string(model_name(m));
}

void oracle_equivalence(Outcome& out) {
  const auto start = Clock::now();
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 200 && out.pass; ++seed) {
    const Instance inst = testing::small_instance(1000 + seed);
    for (const ModelKind m : kModels) {
      const SolveReport fast = solve(inst, m);
      const SolveReport slow = oracle_solve(inst, m);
      const bool same = m == ModelKind::F1
                            ? std::lround(fast.objective) == std::lround(slow.objective)
                            : std::abs(fast.objective - slow.objective) <= kTol;
      if (!fast.optimal || !same) {
        out.fail(tag(seed, m) + ": solver " + fmt6(fast.objective) + " oracle " + fmt6(slow.objective));
        break;
      }
      ++checked;
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) {
    out.fail("suite took " + fmt6(elapsed) + " s");
  }
  out.note << checked << " solves matched, " << fmt6(elapsed) << " s (limit 60 s, tol 1e-6)";
}

void dominance(Outcome& out) {
  double worst = -1e300;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    testing::SmallSpec spec;
    spec.min_orders = 3;
    spec.max_orders = 6;
    const Instance inst = testing::small_instance(5000 + seed, spec);
    const double f3 = solve_f3(inst).objective;
    const double f4 = solve_f4(inst).objective;
    worst = std::max(worst, f4 - f3);
    if (f4 > f3 + kTol) {
      out.fail("seed " + std::to_string(seed) + ": F4 " + fmt6(f4) + " > F3 " + fmt6(f3));
    }
  }
  const Instance line = validate_instance(collinear_stations());
  const double f3 = solve_f3(line).objective;
  const double f4 = solve_f4(line).objective;
  if (!(f4 < f3 - kTol)) {
    out.fail("collinear family F4 " + fmt6(f4) + " not below F3 " + fmt6(f3));
  }
  out.note << "max F4-F3 over 100 instances " << fmt6(worst) << "; collinear F3 " << fmt6(f3) << " F4 "
           << fmt6(f4);
}

void radius_monotonicity(Outcome& out) {
  bool jump = false;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance narrow = validate_instance(radius_family(seed, 30));
    const Instance wide = validate_instance(radius_family(seed, 40));
    for (const Order& o : narrow.orders) {
      if (o.feasible_stations->size() != 1) {
        out.fail("seed " + std::to_string(seed) + ": order with " +
                 std::to_string(o.feasible_stations->size()) + " stations at radius 30");
      }
    }
    bool wider = false;
    for (const Order& o : wide.orders) {
      wider = wider || o.feasible_stations->size() >= 2;
    }
    if (!wider) {
      out.fail("seed " + std::to_string(seed) + ": radius 40 adds no station");
    }
    for (const ModelKind m : {ModelKind::F3, ModelKind::F4}) {
      const SolveReport a = solve(narrow, m);
      const SolveReport b = solve(wide, m);
      if (b.served() < a.served() || b.objective > a.objective + kTol) {
        out.fail(tag(seed, m) + ": r30 " + std::to_string(a.served()) + "/" + fmt6(a.objective) +
                 " r40 " + std::to_string(b.served()) + "/" + fmt6(b.objective));
      }
      jump = jump || (a.served() == 3 && b.served() == 5);
    }
  }
  if (!jump) {
    out.fail("no seed with served 3 -> 5");
  }
  out.note << "30 seeds, F3 and F4, served 3 -> 5 seen: " << (jump ? "yes" : "no");
}

void f1_monotonicity(Outcome& out) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Instance inst = testing::small_instance(7000 + seed);
    double prev = -1;
    for (double h = 20; h <= 300; h += 20) {
      inst.horizon = h;
      inst.big_m.reset();
      const double obj = solve_f1(validate_instance(inst)).objective;
      if (obj < prev) {
        out.fail("seed " + std::to_string(seed) + " horizon " + fmt6(h));
      }
      prev = obj;
    }
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance inst = testing::small_instance(8000 + seed);
    for (Order& o : inst.orders) {
      o.release = 0;
    }
    const DistanceMatrix d = order_matrix(inst);
    std::vector<std::size_t> nodes(inst.orders.size());
    std::iota(nodes.begin(), nodes.end(), std::size_t{1});
    inst.horizon = tsp_exact(d, nodes).length + 1e-9;
    inst.big_m.reset();
    inst = validate_instance(inst);
    if (std::lround(solve_f1(inst).objective) != static_cast<long>(inst.orders.size())) {
      out.fail("saturation seed " + std::to_string(seed));
    }
  }
  out.note << "50 instances x 15 horizons; saturation on 20 instances at full-tour horizon";
}

double wtp_bound(const Instance& inst) {
  double sum = 0;
  for (const Order& o : inst.orders) {
    sum += *std::max_element(o.wtp->begin(), o.wtp->end());
  }
  return sum;
}

void f2_hierarchy(Outcome& out) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = testing::small_instance(9000 + seed);
    const SlotSolution rev = solve_f2(inst);
    const SlotSolution lex = solve_f2_lex(inst);
    if (rev.revenue() > wtp_bound(inst) + kTol) {
      out.fail("seed " + std::to_string(seed) + ": revenue above WTP bound");
    }
    if (lex.report.served() < rev.report.served() || lex.revenue() > rev.revenue() + kTol) {
      out.fail("seed " + std::to_string(seed) + ": F2LEX vs F2 ordering");
    }
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = validate_instance(all_at_depot(6, {60, 120, 240}, seed));
    if (std::abs(solve_f2(inst).revenue() - wtp_bound(inst)) > kTol) {
      out.fail("all-at-depot seed " + std::to_string(seed) + " below WTP bound");
    }
  }
  int f2_served = 0;
  int lex_served = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = validate_instance(far_pair_family(seed));
    f2_served = solve_f2(inst).report.served();
    lex_served = solve_f2_lex(inst).report.served();
    if (f2_served != 2 || lex_served <= f2_served) {
      out.fail("far-pair seed " + std::to_string(seed) + ": F2 " + std::to_string(f2_served) +
               " F2LEX " + std::to_string(lex_served));
    }
  }
  out.note << "100 instances; all-at-depot equality on 10; far-pair F2 served " << f2_served
           << " F2LEX " << lex_served;
}

void plan_integrity(Outcome& out) {
  int plans = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = testing::small_instance(11000 + seed);
    for (const ModelKind m : kModels) {
      const SolveReport rep = solve(inst, m);
      const PlanVerdict v = validate_plan(inst, rep.plan);
      if (!v.ok()) {
        out.fail(tag(seed, m) + ": " + v.violations.front().tag);
        continue;
      }
      if (std::abs(eval_objective(inst, rep.plan) - rep.objective) > kTol) {
        out.fail(tag(seed, m) + ": eval_objective differs");
      }
      compute_metrics(inst, rep.plan);
      ++plans;
    }
  }
  Instance inst;
  inst.horizon = 48;
  inst.orders = {{1, {0, 5}, 17, {}, {}, {}}, {2, {0, 8}, 0, {}, {}, {}}};
  inst = validate_instance(inst);
  Plan p;
  p.trips = {{{0, 1, 0}, 22, 0}, {{0, 2, 0}, 32, 0}};
  p.assignments[1] = {0, std::nullopt, std::nullopt, 27};
  p.assignments[2] = {1, std::nullopt, std::nullopt, 40};
  const MetricsReport m = compute_metrics(inst, p);
  if (m.avg_wait != 25.0 || m.max_wait != 40.0 || m.wait_variability != 30.0) {
    out.fail("two-wait metrics");
  }
  out.note << plans << " plans valid; two-wait avg " << fmt6(m.avg_wait.value_or(-1)) << " max "
           << fmt6(m.max_wait.value_or(-1)) << " variability " << fmt6(m.wait_variability.value_or(-1));
}

void simulation_soundness(Outcome& out) {
  const Instance inst = validate_instance(two_cluster(7));
  const std::vector<Policy> policies{Myopic{}, Threshold{1}, Threshold{2}, ExpectedValue{}, Consensus{1},
                                     Consensus{8}};
  SimConfig cfg;
  cfg.replications = 100;
  cfg.master_seed = 7;
  cfg.threads = 1;
  const SimReport serial = simulate(inst, policies, cfg);
  for (const unsigned threads : {2U, 4U, 7U}) {
    cfg.threads = threads;
    if (!(simulate(inst, policies, cfg) == serial)) {
      out.fail("report differs with " + std::to_string(threads) + " threads");
    }
  }
  for (const ReplicationResult& r : serial.replications) {
    for (std::size_t p = 0; p < policies.size(); ++p) {
      if (r.served[p] > r.pi_bound) {
        out.fail("replication " + std::to_string(r.replication) + " " + serial.policies[p] +
                 " above bound");
      }
    }
    if (r.traces[1] != r.traces[0]) {
      out.fail("threshold(1) trace differs from myopic, replication " + std::to_string(r.replication));
    }
    // consensus(1) is policy index 4, stream salt 5
    Rng rng = derive_stream(cfg.master_seed, r.replication, 5);
    const EpisodeResult single = run_episode(
        inst, r.scenario,
        [&](const DecisionState& s) { return reoptimize(inst, s, sample_conditional(inst, s, rng)); }, cfg);
    if (single.trace != r.traces[4]) {
      out.fail("consensus(1) trace differs from single-scenario reoptimization, replication " +
               std::to_string(r.replication));
    }
  }
  const PairedDifference diff = paired_difference(serial, 5, 0);
  out.note << "100 reps; mean served";
  for (std::size_t p = 0; p < policies.size(); ++p) {
    out.note << " " << serial.policies[p] << "=" << fmt6(serial.mean_served[p]);
  }
  out.note << " PI=" << fmt6(serial.mean_pi_bound) << "; consensus(8)-myopic " << fmt6(diff.mean)
           << " (se " << fmt6(diff.std_error) << ", reported only)";
}

void desk_runtime(Outcome& out) {
  double slowest = 0;
  double compare_time = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = validate_instance(gen_instance(desk_profile(seed)));
    for (const ModelKind m : kModels) {
      const auto start = Clock::now();
      const SolveReport rep = solve(inst, m);
      const double t = seconds_since(start);
      slowest = std::max(slowest, t);
      if (!rep.optimal || t >= 10.0) {
        out.fail(tag(seed, m) + ": optimal " + std::to_string(rep.optimal) + " in " + fmt6(t) + " s");
      }
    }
    const auto start = Clock::now();
    const std::vector<CompareRow> rows = compare(inst);
    const double t = seconds_since(start);
    compare_time = std::max(compare_time, t);
    for (const CompareRow& row : rows) {
      if (row.error || !row.optimal) {
        out.fail("compare seed " + std::to_string(seed) + " " + std::string(model_name(row.model)));
      }
    }
    if (t >= 30.0) {
      out.fail("compare seed " + std::to_string(seed) + " took " + fmt6(t) + " s");
    }
  }
  out.note << "5 desk seeds; slowest solve " << fmt6(slowest) << " s (limit 10), slowest compare "
           << fmt6(compare_time) << " s (limit 30)";
}

}  // namespace

int main() {
  report(1, "oracle equivalence", oracle_equivalence);
  report(2, "F4 dominates F3", dominance);
  report(3, "radius monotonicity", radius_monotonicity);
  report(4, "F1 monotonicity and saturation", f1_monotonicity);
  report(5, "F2 bounds and hierarchy", f2_hierarchy);
  report(6, "plan and metric integrity", plan_integrity);
  report(7, "simulation soundness", simulation_soundness);
  report(8, "desk-scale runtime", desk_runtime);
  return failures == 0 ? 0 : 1;
}
