#include "sdd/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "sdd/geometry.hpp"
#include "sdd/solve.hpp"
#include "sdd/tsp.hpp"

namespace sdd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool contains(const std::vector<int>& sorted, int id) {
  return std::ranges::binary_search(sorted, id);
}

std::size_t index_of(const Instance& inst, int id) {
  const int i = inst.order_index(id);
  if (i < 0) {
    throw ProtocolError("unknown order " + std::to_string(id));
  }
  return static_cast<std::size_t>(i);
}

// F1 from time t over `ids`, with release estimates in absolute time.
SolveReport solve_from(const Instance& inst, double t, const std::vector<int>& ids,
                       const std::vector<double>& estimate) {
  Instance sub;
  sub.depot = inst.depot;
  sub.horizon = inst.horizon - t;
  for (const int id : ids) {
    const auto i = index_of(inst, id);
    Order o;
    o.id = id;
    o.loc = inst.orders[i].loc;
    o.release = std::max(0.0, estimate[i] - t);
    sub.orders.push_back(std::move(o));
  }
  sub.max_trips = std::max<int>(1, static_cast<int>(ids.size()));
  return solve_f1(sub);
}

Decision first_action(const SolveReport& rep, const DecisionState& state) {
  if (rep.plan.trips.empty()) {
    return {};
  }
  Decision d;
  for (const int id : rep.plan.trips.front().route) {
    if (id == 0) {
      continue;
    }
    if (!contains(state.released, id)) {
      return {};
    }
    d.push_back(id);
  }
  std::ranges::sort(d);
  return d;
}

Decision myopic(const Instance& inst, const DecisionState& state) {
  std::vector<double> now(inst.orders.size(), state.t);
  return first_action(solve_from(inst, state.t, state.released, now), state);
}

Decision threshold(const Instance& inst, const DecisionState& state, int theta, double step) {
  int servable = 0;
  bool expiring = false;
  for (const int id : state.released) {
    const double round = 2.0 * euclidean(inst.depot, inst.orders[index_of(inst, id)].loc);
    if (state.t + round <= inst.horizon + kEps) {
      ++servable;
      expiring = expiring || state.t + step + round > inst.horizon + kEps;
    }
  }
  if (servable < theta && !expiring) {
    return {};
  }
  return myopic(inst, state);
}

Decision consensus(const Instance& inst, const DecisionState& state, int samples, Rng& rng) {
  struct Tally {
    int count = 0;
    double objective_sum = 0.0;
  };
  std::map<Decision, Tally> tally;
  for (int s = 0; s < samples; ++s) {
    const auto releases = sample_conditional(inst, state, rng);
    int objective = 0;
    const Decision d = reoptimize(inst, state, releases, &objective);
    auto& e = tally[d];
    e.count += 1;
    e.objective_sum += objective;
  }
  // map order gives the lexicographically smallest key first; only strictly
  // better entries replace it
  const Decision* best = nullptr;
  const Tally* best_tally = nullptr;
  for (const auto& [key, e] : tally) {
    if (best == nullptr || e.count > best_tally->count ||
        (e.count == best_tally->count &&
         e.objective_sum / e.count > best_tally->objective_sum / best_tally->count + kEps)) {
      best = &key;
      best_tally = &e;
    }
  }
  return best != nullptr ? *best : Decision{};
}

}  // namespace

std::string policy_name(const Policy& p) {
  return std::visit(Overloaded{
                        [](const Myopic&) { return std::string("myopic"); },
                        [](const Threshold& t) { return "threshold(" + std::to_string(t.theta) + ")"; },
                        [](const ExpectedValue&) { return std::string("expected"); },
                        [](const Consensus& c) { return "consensus(" + std::to_string(c.samples) + ")"; },
                    },
                    p);
}

void check_policy(const Policy& p) {
  if (const auto* t = std::get_if<Threshold>(&p); t != nullptr && t->theta <= 0) {
    throw std::invalid_argument("threshold must be positive");
  }
  if (const auto* c = std::get_if<Consensus>(&p); c != nullptr && c->samples <= 0) {
    throw std::invalid_argument("consensus needs a positive number of samples");
  }
}

Rng derive_stream(std::uint64_t master_seed, std::uint64_t replication, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

double unit_draw(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double sample_release(const ReleaseDist& dist, Rng& rng) {
  return sample_release_after(dist, -std::numeric_limits<double>::infinity(), rng);
}

double sample_release_after(const ReleaseDist& dist, double t, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const PointRelease& p) { return std::max(p.t, t); },
          [&](const UniformRelease& u) {
            if (u.hi <= t) {
              return t;
            }
            const double lo = std::max(u.lo, t);
            return std::min(u.hi, lo + (u.hi - lo) * unit_draw(rng));
          },
          [&](const DiscreteRelease& d) {
            double mass = 0.0;
            for (const auto& [time, p] : d.points) {
              mass += time > t ? p : 0.0;
            }
            if (mass <= 0.0) {
              return t;
            }
            const double u = unit_draw(rng) * mass;
            double acc = 0.0;
            double last = t;
            for (const auto& [time, p] : d.points) {
              if (time <= t || p <= 0.0) {
                continue;
              }
              acc += p;
              last = time;
              if (u < acc) {
                return time;
              }
            }
            return last;
          },
      },
      dist);
}

double mean_release_after(const ReleaseDist& dist, double t) {
  return std::visit(Overloaded{
                        [&](const PointRelease& p) { return std::max(p.t, t); },
                        [&](const UniformRelease& u) {
                          return u.hi <= t ? t : (std::max(u.lo, t) + u.hi) / 2.0;
                        },
                        [&](const DiscreteRelease& d) {
                          double mass = 0.0;
                          double sum = 0.0;
                          for (const auto& [time, p] : d.points) {
                            if (time > t) {
                              mass += p;
                              sum += p * time;
                            }
                          }
                          return mass > 0.0 ? sum / mass : t;
                        },
                    },
                    dist);
}

Scenario sample_scenario(const Instance& inst, Rng& rng) {
  Scenario sc;
  for (const auto& o : inst.orders) {
    if (!o.release_dist) {
      throw ConfigError("order " + std::to_string(o.id) + " has no release distribution");
    }
    sc.release.push_back(sample_release(*o.release_dist, rng));
  }
  return sc;
}

Instance realized_instance(const Instance& inst, const Scenario& sc) {
  Instance out = inst;
  for (std::size_t i = 0; i < out.orders.size(); ++i) {
    out.orders[i].release = sc.release.at(i);
  }
  return out;
}

Decision reoptimize(const Instance& inst, const DecisionState& state,
                    const std::vector<double>& estimate, int* objective) {
  std::vector<int> ids = state.released;
  ids.insert(ids.end(), state.pending.begin(), state.pending.end());
  std::ranges::sort(ids);
  std::vector<double> est = estimate;
  for (const int id : state.released) {
    est[index_of(inst, id)] = state.t;
  }
  const SolveReport rep = solve_from(inst, state.t, ids, est);
  if (objective != nullptr) {
    *objective = static_cast<int>(rep.objective);
  }
  return first_action(rep, state);
}

std::vector<double> sample_conditional(const Instance& inst, const DecisionState& state, Rng& rng) {
  std::vector<double> out(inst.orders.size(), state.t);
  for (const int id : state.pending) {
    const auto i = index_of(inst, id);
    const auto& dist = inst.orders[i].release_dist;
    out[i] = dist ? sample_release_after(*dist, state.t, rng) : std::max(state.t, inst.orders[i].release);
  }
  return out;
}

Decision policy_decide(const Instance& inst, const Policy& policy, const DecisionState& state,
                       double grid_step, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const Myopic&) { return myopic(inst, state); },
          [&](const Threshold& p) { return threshold(inst, state, p.theta, grid_step); },
          [&](const ExpectedValue&) {
            std::vector<double> est(inst.orders.size(), state.t);
            for (const int id : state.pending) {
              const auto i = index_of(inst, id);
              const auto& dist = inst.orders[i].release_dist;
              est[i] = dist ? mean_release_after(*dist, state.t)
                            : std::max(state.t, inst.orders[i].release);
            }
            return reoptimize(inst, state, est);
          },
          [&](const Consensus& p) { return consensus(inst, state, p.samples, rng); },
      },
      policy);
}

EpisodeResult run_episode(const Instance& inst, const Scenario& sc, const DecideFn& decide,
                          const SimConfig& cfg) {
  if (!(cfg.grid_step > 0.0)) {
    throw ConfigError("grid step must be positive");
  }
  const std::size_t n = inst.orders.size();
  if (sc.release.size() != n) {
    throw std::invalid_argument("scenario size does not match the instance");
  }
  const DistanceMatrix dist = order_matrix(inst);
  EpisodeResult res;
  res.plan.model = ModelKind::F1;
  std::vector<bool> delivered(n, false);

  std::int64_t k = 0;
  while (true) {
    const double t = static_cast<double>(k) * cfg.grid_step;
    if (t > inst.horizon + kEps) {
      break;
    }
    DecisionState state;
    state.t = t;
    for (std::size_t i = 0; i < n; ++i) {
      if (delivered[i]) {
        continue;
      }
      (sc.release[i] <= t + kBoundarySlack ? state.released : state.pending).push_back(inst.orders[i].id);
    }
    if (state.released.empty()) {
      if (state.pending.empty()) {
        break;
      }
      ++k;
      continue;
    }
    Decision d = decide(state);
    std::ranges::sort(d);
    res.trace.push_back({t, d});
    if (d.empty()) {
      ++k;
      continue;
    }
    if (std::ranges::adjacent_find(d) != d.end()) {
      throw ProtocolError("order dispatched twice in one trip");
    }
    std::vector<std::size_t> nodes;
    for (const int id : d) {
      if (!contains(state.released, id)) {
        throw ProtocolError("order " + std::to_string(id) + " is not released or already delivered");
      }
      nodes.push_back(index_of(inst, id) + 1);
    }
    const Tour tour = tsp_exact(dist, nodes);
    if (t + tour.length > inst.horizon + kEps) {
      throw ProtocolError("trip dispatched at " + std::to_string(t) + " cannot return by the horizon");
    }
    Trip trip;
    trip.start = t;
    trip.end = t + tour.length;
    double clock = t;
    for (std::size_t s = 0; s < tour.nodes.size(); ++s) {
      if (s > 0) {
        clock += dist(tour.nodes[s - 1], tour.nodes[s]);
      }
      const std::size_t node = tour.nodes[s];
      if (node == 0) {
        trip.route.push_back(0);
        continue;
      }
      const int id = inst.orders[node - 1].id;
      trip.route.push_back(id);
      delivered[node - 1] = true;
      res.plan.assignments[id] = {static_cast<int>(res.plan.trips.size()), std::nullopt,
                                  std::nullopt, clock};
    }
    res.plan.trips.push_back(std::move(trip));
    const auto next = static_cast<std::int64_t>(std::ceil(res.plan.trips.back().end / cfg.grid_step - 1e-9));
    k = std::max(k, next);
  }
  for (const auto& o : inst.orders) {
    if (!res.plan.assignments.contains(o.id)) {
      res.plan.unserved.push_back(o.id);
    }
  }
  res.served = static_cast<int>(res.plan.assignments.size());
  return res;
}

EpisodeResult run_episode(const Instance& inst, const Scenario& sc, const Policy& policy,
                          const SimConfig& cfg, Rng& policy_rng) {
  check_policy(policy);
  return run_episode(
      inst, sc,
      [&](const DecisionState& state) {
        return policy_decide(inst, policy, state, cfg.grid_step, policy_rng);
      },
      cfg);
}

SimReport simulate(const Instance& inst, const std::vector<Policy>& policies,
                   const SimConfig& cfg) {
  if (!(cfg.grid_step > 0.0)) {
    throw ConfigError("grid step must be positive");
  }
  if (cfg.replications <= 0) {
    throw ConfigError("replications must be positive");
  }
  if (static_cast<int>(inst.orders.size()) > cfg.max_orders) {
    throw GuardExceeded("simulation is limited to " + std::to_string(cfg.max_orders) + " orders");
  }
  for (const auto& o : inst.orders) {
    if (!o.release_dist) {
      throw ConfigError("order " + std::to_string(o.id) + " has no release distribution");
    }
  }
  for (const auto& p : policies) {
    check_policy(p);
  }

  SimReport report;
  for (const auto& p : policies) {
    report.policies.push_back(policy_name(p));
  }
  const auto reps = static_cast<std::size_t>(cfg.replications);
  report.replications.resize(reps);

  auto run_one = [&](std::size_t r) {
    ReplicationResult out;
    out.replication = static_cast<int>(r);
    Rng scenario_rng = derive_stream(cfg.master_seed, r, 0);
    out.scenario = sample_scenario(inst, scenario_rng);
    SolverConfig pi_cfg;
    pi_cfg.max_trips = std::max<int>(1, static_cast<int>(inst.orders.size()));
    out.pi_bound = static_cast<int>(solve_f1(realized_instance(inst, out.scenario), pi_cfg).objective);
    for (std::size_t p = 0; p < policies.size(); ++p) {
      Rng rng = derive_stream(cfg.master_seed, r, p + 1);
      EpisodeResult ep = run_episode(inst, out.scenario, policies[p], cfg, rng);
      out.served.push_back(ep.served);
      out.traces.push_back(std::move(ep.trace));
    }
    report.replications[r] = std::move(out);
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::size_t failed_at = reps;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        run_one(r);
      } catch (...) {
        // keep the failure of the lowest replication so errors are reproducible
        const std::lock_guard lock(failure_mutex);
        if (r < failed_at) {
          failed_at = r;
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  report.mean_served.assign(policies.size(), 0.0);
  for (const auto& rep : report.replications) {
    report.mean_pi_bound += rep.pi_bound;
    for (std::size_t p = 0; p < policies.size(); ++p) {
      report.mean_served[p] += rep.served[p];
    }
  }
  report.mean_pi_bound /= static_cast<double>(reps);
  for (auto& m : report.mean_served) {
    m /= static_cast<double>(reps);
  }
  return report;
}

PairedDifference paired_difference(const SimReport& rep, std::size_t a, std::size_t b) {
  const auto n = rep.replications.size();
  if (n == 0) {
    return {};
  }
  double sum = 0.0;
  for (const auto& r : rep.replications) {
    sum += r.served.at(a) - r.served.at(b);
  }
  const double mean = sum / static_cast<double>(n);
  if (n < 2) {
    return {mean, 0.0};
  }
  double sq = 0.0;
  for (const auto& r : rep.replications) {
    const double d = r.served.at(a) - r.served.at(b) - mean;
    sq += d * d;
  }
  const double sd = std::sqrt(sq / static_cast<double>(n - 1));
  return {mean, sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace sdd
