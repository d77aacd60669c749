// Orienteering with release dates.
//
// Trips are built backward from the horizon: the last trip ends at T_E, each
// earlier trip ends where the next one starts. A partial plan is then fully
// described by the set of orders already placed and the start time of its
// earliest trip, and a later start is never worse. The search is a DFS over
// "which subset forms the next earlier trip" with
//   - per-trip routes from one Held-Karp table over all candidate orders,
//   - an upper bound of served-so-far plus the orders that still fit alone
//     before the current earliest start,
//   - a dominance memo per placed set over (trip count, start time).

#include <algorithm>
#include <limits>
#include <string>

#include "sdd/geometry.hpp"
#include "sdd/solve.hpp"
#include "search.hpp"

namespace sdd {

namespace detail {

void require_mask_capacity(std::size_t n, const char* who) {
  if (n > 30) {
    throw GuardExceeded(std::string(who) + ": at most 30 candidate orders are supported");
  }
}

}  // namespace detail

namespace {

using detail::Budget;
using detail::cmp_eps;

struct Incumbent {
  int served = -1;
  int trips = 0;
  double distance = 0.0;
  std::vector<int> ids;
  std::vector<std::pair<std::uint32_t, double>> trips_backward;  // (mask, start)
};

class F1Search {
 public:
  F1Search(const Instance& inst, const SolverConfig& cfg)
      : inst_(inst), dist_(order_matrix(inst)), budget_(cfg),
        max_trips_(detail::resolved_trip_bound(inst, cfg)) {
    // orders that cannot be served even alone are never branched on
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < inst.orders.size(); ++i) {
      const double round = 2.0 * dist_(0, i + 1);
      if (inst.orders[i].release + round <= inst.horizon + kEps) {
        nodes.push_back(i + 1);
      }
    }
    detail::require_mask_capacity(nodes.size(), "solve_f1");
    tours_.emplace(dist_, nodes, cfg.held_karp_limit);
    k_ = tours_->size();
    release_.resize(k_);
    round_.resize(k_);
    ids_.resize(k_);
    for (std::size_t p = 0; p < k_; ++p) {
      const auto& o = inst.orders[tours_->nodes()[p] - 1];
      release_[p] = o.release;
      round_[p] = 2.0 * dist_(0, tours_->nodes()[p]);
      ids_[p] = o.id;
    }
    const std::size_t masks = std::size_t{1} << k_;
    length_.resize(masks);
    max_release_.resize(masks);
    for (std::size_t m = 1; m < masks; ++m) {
      length_[m] = tours_->length(static_cast<std::uint32_t>(m));
      const int low = std::countr_zero(m);
      max_release_[m] = std::max(max_release_[m & (m - 1)], release_[static_cast<std::size_t>(low)]);
    }
    memo_.resize(masks);
  }

  SolveReport run() {
    std::vector<std::pair<std::uint32_t, double>> path;
    dfs(0, inst_.horizon, path);
    return report();
  }

 private:
  bool better(int served, int trips, double distance, const std::vector<int>& ids) const {
    if (served != best_.served) {
      return served > best_.served;
    }
    if (trips != best_.trips) {
      return trips < best_.trips;
    }
    if (const int c = cmp_eps(distance, best_.distance); c != 0) {
      return c < 0;
    }
    return ids < best_.ids;
  }

  std::vector<int> ids_of(std::uint32_t mask) const {
    std::vector<int> ids;
    for (int p : detail::bits_of(mask)) {
      ids.push_back(ids_[static_cast<std::size_t>(p)]);
    }
    std::ranges::sort(ids);
    return ids;
  }

  // true if an earlier visit reached `placed` with no more trips and no
  // earlier start
  bool dominated(std::uint32_t placed, int trips, double start) {
    auto& seen = memo_[placed];
    for (const auto& [t, s] : seen) {
      if (t <= trips && s >= start - 1e-12) {
        return true;
      }
    }
    std::erase_if(seen, [&](const auto& e) { return e.first >= trips && e.second <= start; });
    seen.emplace_back(trips, start);
    return false;
  }

  void dfs(std::uint32_t placed, double start,
           std::vector<std::pair<std::uint32_t, double>>& path) {
    if (!budget_.tick()) {
      return;
    }
    const int served = std::popcount(placed);
    const int trips = static_cast<int>(path.size());
    const double distance = inst_.horizon - start;
    if (better(served, trips, distance, ids_of(placed))) {
      best_ = {served, trips, distance, ids_of(placed), path};
    }
    if (trips >= max_trips_) {
      return;
    }

    std::uint32_t cand = 0;
    for (std::size_t p = 0; p < k_; ++p) {
      if ((placed >> p & 1U) == 0 && release_[p] + round_[p] <= start + kEps) {
        cand |= 1U << p;
      }
    }
    const int bound = served + std::popcount(cand);
    if (cand == 0 || bound < best_.served || (bound == best_.served && trips + 1 > best_.trips)) {
      return;
    }
    if (dominated(placed, trips, start)) {
      return;
    }

    for (std::uint32_t sub = cand; sub != 0; sub = (sub - 1) & cand) {
      const double next = start - length_[sub];
      if (next < -kEps || next < max_release_[sub] - kEps) {
        continue;
      }
      path.emplace_back(sub, next);
      dfs(placed | sub, next, path);
      path.pop_back();
      if (budget_.exhausted()) {
        return;
      }
    }
  }

  SolveReport report() const {
    SolveReport rep;
    rep.model = ModelKind::F1;
    rep.plan.model = ModelKind::F1;
    rep.nodes_explored = budget_.nodes();
    rep.runtime_seconds = budget_.elapsed();
    rep.optimal = !budget_.exhausted();
    const int served = std::max(0, best_.served);
    rep.objective = served;
    if (!rep.optimal) {
      int ub = 0;
      for (std::size_t p = 0; p < k_; ++p) {
        ub += release_[p] + round_[p] <= inst_.horizon + kEps ? 1 : 0;
      }
      rep.bound_gap = std::max(0, ub - served);
    }

    // trips were recorded last-first
    for (auto it = best_.trips_backward.rbegin(); it != best_.trips_backward.rend(); ++it) {
      const auto [mask, start] = *it;
      const Tour tour = tours_->tour(mask);
      Trip trip;
      trip.start = start;
      trip.route.push_back(0);
      double t = start;
      for (std::size_t i = 1; i + 1 < tour.nodes.size(); ++i) {
        t += dist_(tour.nodes[i - 1], tour.nodes[i]);
        const int id = inst_.orders[tour.nodes[i] - 1].id;
        trip.route.push_back(id);
        rep.plan.assignments[id] = {static_cast<int>(rep.plan.trips.size()), std::nullopt,
                                    std::nullopt, t};
      }
      trip.route.push_back(0);
      trip.end = start + tour.length;
      rep.plan.trips.push_back(std::move(trip));
    }
    for (const auto& o : inst_.orders) {
      if (!rep.plan.assignments.contains(o.id)) {
        rep.plan.unserved.push_back(o.id);
      }
    }
    return rep;
  }

  const Instance& inst_;
  DistanceMatrix dist_;
  Budget budget_;
  int max_trips_;
  std::optional<SubsetTours> tours_;
  std::size_t k_ = 0;
  std::vector<double> release_;
  std::vector<double> round_;
  std::vector<int> ids_;
  std::vector<double> length_;
  std::vector<double> max_release_;
  std::vector<std::vector<std::pair<int, double>>> memo_;
  Incumbent best_;
};

}  // namespace

SolveReport solve_f1(const Instance& inst, const SolverConfig& cfg) {
  return F1Search(inst, cfg).run();
}

}  // namespace sdd
