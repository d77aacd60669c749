// Deadline-option selection (revenue) and its served-first hierarchical
// variant.
//
// Trips run forward in time and each starts as early as its parcels and the
// previous trip allow; later starts only delay arrivals. Because the price of
// every option equals the customer's WTP, the provider picks, per order, the
// most valuable option whose deadline the realized arrival meets. The search
// enumerates the next trip as an ordered route (routes are not shortest tours
// here: visiting order decides which deadlines are met), bounds with the best
// option each remaining order could still reach from the current time, and
// keeps a Pareto memo per served set over (end time, revenue, trips, distance).

#include <algorithm>
#include <limits>

#include "sdd/geometry.hpp"
#include "sdd/solve.hpp"
#include "search.hpp"

namespace sdd {

namespace {

using detail::Budget;
using detail::cmp_eps;

struct Score {
  int served = 0;
  double revenue = 0.0;
};

struct MemoEntry {
  double end;
  double revenue;
  int trips;
  double distance;
};

struct PlannedTrip {
  std::vector<int> route;  // local positions
  double start = 0.0;
  double length = 0.0;
};

class F2Search {
 public:
  F2Search(const Instance& inst, const SolverConfig& cfg, bool lexicographic)
      : inst_(inst), dist_(order_matrix(inst)), budget_(cfg),
        max_trips_(detail::resolved_trip_bound(inst, cfg)), lex_(lexicographic) {
    if (!inst.supports_slots()) {
      throw ConfigError("slot models need deadline options and a WTP vector per order");
    }
    deadlines_ = inst.options->deadlines;
    for (std::size_t i = 0; i < inst.orders.size(); ++i) {
      const auto& o = inst.orders[i];
      const double d0 = dist_(0, i + 1);
      // alone and immediately: arrival r + d0, back by r + 2 d0
      if (o.release + 2.0 * d0 <= inst.horizon + kEps && d0 <= deadlines_.back() + kEps) {
        index_.push_back(i);
      }
    }
    detail::require_mask_capacity(index_.size(), "solve_f2");
    k_ = index_.size();
    release_.resize(k_);
    d0_.resize(k_);
    for (std::size_t p = 0; p < k_; ++p) {
      release_[p] = inst.orders[index_[p]].release;
      d0_[p] = dist_(0, index_[p] + 1);
    }
    memo_.resize(std::size_t{1} << k_);
  }

  SlotSolution run() {
    std::vector<PlannedTrip> path;
    outer(0, 0.0, 0.0, 0.0, path);
    return report();
  }

 private:
  double d(std::size_t a, std::size_t b) const { return dist_(index_[a] + 1, index_[b] + 1); }

  /// Best (value, option) for an arrival; option -1 when no deadline is met.
  std::pair<double, int> best_option(std::size_t p, double arrival) const {
    const auto& wtp = *inst_.orders[index_[p]].wtp;
    double value = -1.0;
    int option = -1;
    for (std::size_t o = 0; o < deadlines_.size(); ++o) {
      if (arrival <= release_[p] + deadlines_[o] + kEps && wtp[o] > value) {
        value = wtp[o];
        option = static_cast<int>(o);
      }
    }
    return {value, option};
  }

  int cmp_score(const Score& a, const Score& b) const {
    if (lex_ && a.served != b.served) {
      return a.served < b.served ? -1 : 1;
    }
    return cmp_eps(a.revenue, b.revenue);
  }

  bool better(const Score& s, int trips, double distance, const std::vector<int>& ids) const {
    if (!have_best_) {
      return true;
    }
    if (const int c = cmp_score(s, best_score_); c != 0) {
      return c > 0;
    }
    if (trips != best_trips_) {
      return trips < best_trips_;
    }
    if (const int c = cmp_eps(distance, best_distance_); c != 0) {
      return c < 0;
    }
    return ids < best_ids_;
  }

  std::vector<int> ids_of(std::uint32_t mask) const {
    std::vector<int> ids;
    for (int p : detail::bits_of(mask)) {
      ids.push_back(inst_.orders[index_[static_cast<std::size_t>(p)]].id);
    }
    std::ranges::sort(ids);
    return ids;
  }

  bool dominated(std::uint32_t served, const MemoEntry& e) {
    auto& seen = memo_[served];
    for (const auto& s : seen) {
      if (s.end <= e.end + 1e-12 && s.revenue >= e.revenue - 1e-12 && s.trips <= e.trips &&
          s.distance <= e.distance + 1e-12) {
        return true;
      }
    }
    std::erase_if(seen, [&](const MemoEntry& s) {
      return e.end <= s.end && e.revenue >= s.revenue && e.trips <= s.trips &&
             e.distance <= s.distance;
    });
    seen.push_back(e);
    return false;
  }

  void outer(std::uint32_t served, double end, double revenue, double distance,
             std::vector<PlannedTrip>& path) {
    if (!budget_.tick()) {
      return;
    }
    const int trips = static_cast<int>(path.size());
    const Score here{std::popcount(served), revenue};
    if (better(here, trips, distance, ids_of(served))) {
      have_best_ = true;
      best_score_ = here;
      best_trips_ = trips;
      best_distance_ = distance;
      best_ids_ = ids_of(served);
      best_path_ = path;
    }
    if (trips >= max_trips_) {
      return;
    }

    std::uint32_t cand = 0;
    Score bound = here;
    for (std::size_t p = 0; p < k_; ++p) {
      if ((served >> p & 1U) != 0) {
        continue;
      }
      const double s = std::max(end, release_[p]);
      if (s + 2.0 * d0_[p] > inst_.horizon + kEps) {
        continue;
      }
      const auto [value, option] = best_option(p, s + d0_[p]);
      if (option < 0) {
        continue;
      }
      cand |= 1U << p;
      bound.served += 1;
      bound.revenue += value;
    }
    if (cand == 0) {
      return;
    }
    const int c = cmp_score(bound, best_score_);
    if (c < 0 || (c == 0 && trips + 1 > best_trips_)) {
      return;
    }
    if (dominated(served, {end, revenue, trips, distance})) {
      return;
    }

    std::vector<int> route;
    std::vector<double> offsets;
    extend(served, cand, end, revenue, distance, 0.0, 0.0, route, offsets, path);
  }

  // Grows the route of the next trip one order at a time; every prefix is
  // also tried as a complete trip.
  void extend(std::uint32_t served, std::uint32_t cand, double prev_end, double revenue,
              double distance, double max_release, double path_len, std::vector<int>& route,
              std::vector<double>& offsets, std::vector<PlannedTrip>& path) {
    for (std::uint32_t rest = cand; rest != 0; rest &= rest - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(rest));
      const double reach =
          path_len + (route.empty() ? d0_[j] : d(static_cast<std::size_t>(route.back()), j));
      const double rel = std::max(max_release, release_[j]);
      const double start = std::max(prev_end, rel);
      const double length = reach + d0_[j];
      if (start + length > inst_.horizon + kEps) {
        continue;
      }
      route.push_back(static_cast<int>(j));
      offsets.push_back(reach);

      // appending never moves the start earlier, so a missed deadline stays missed
      double gain = 0.0;
      bool ok = true;
      for (std::size_t i = 0; i < route.size(); ++i) {
        const auto [value, option] =
            best_option(static_cast<std::size_t>(route[i]), start + offsets[i]);
        if (option < 0) {
          ok = false;
          break;
        }
        gain += value;
      }
      if (ok) {
        std::uint32_t in_trip = 0;
        for (int p : route) {
          in_trip |= 1U << p;
        }
        path.push_back({route, start, length});
        outer(served | in_trip, start + length, revenue + gain, distance + length, path);
        path.pop_back();
        if (!budget_.exhausted()) {
          extend(served, cand & ~(1U << j), prev_end, revenue, distance, rel, reach, route,
                 offsets, path);
        }
      }
      route.pop_back();
      offsets.pop_back();
      if (budget_.exhausted()) {
        return;
      }
    }
  }

  SlotSolution report() const {
    SlotSolution out;
    SolveReport& rep = out.report;
    rep.model = lex_ ? ModelKind::F2Lex : ModelKind::F2;
    rep.plan.model = rep.model;
    rep.nodes_explored = budget_.nodes();
    rep.runtime_seconds = budget_.elapsed();
    rep.optimal = !budget_.exhausted();
    rep.objective = best_score_.revenue;

    for (const auto& pt : best_path_) {
      Trip trip;
      trip.start = pt.start;
      trip.route.push_back(0);
      std::size_t prev = 0;
      double t = pt.start;
      for (int p : pt.route) {
        const std::size_t node = index_[static_cast<std::size_t>(p)] + 1;
        t += dist_(prev, node);
        prev = node;
        const auto [value, option] = best_option(static_cast<std::size_t>(p), t);
        const int id = inst_.orders[node - 1].id;
        trip.route.push_back(id);
        rep.plan.assignments[id] = {static_cast<int>(rep.plan.trips.size()), option,
                                    std::nullopt, t};
      }
      trip.route.push_back(0);
      trip.end = pt.start + pt.length;
      rep.plan.trips.push_back(std::move(trip));
    }
    for (const auto& o : inst_.orders) {
      if (!rep.plan.assignments.contains(o.id)) {
        rep.plan.unserved.push_back(o.id);
      }
    }
    if (!rep.optimal) {
      double ub = 0.0;
      for (std::size_t p = 0; p < k_; ++p) {
        ub += best_option(p, release_[p] + d0_[p]).first;
      }
      rep.bound_gap = std::max(0.0, ub - rep.objective);
    }
    out.choices = slot_choices(inst_, rep.plan);
    return out;
  }

  const Instance& inst_;
  DistanceMatrix dist_;
  Budget budget_;
  int max_trips_;
  bool lex_;
  std::vector<double> deadlines_;
  std::vector<std::size_t> index_;  // local position -> order index
  std::size_t k_ = 0;
  std::vector<double> release_;
  std::vector<double> d0_;
  std::vector<std::vector<MemoEntry>> memo_;

  bool have_best_ = false;
  Score best_score_;
  int best_trips_ = 0;
  double best_distance_ = 0.0;
  std::vector<int> best_ids_;
  std::vector<PlannedTrip> best_path_;
};

}  // namespace

std::vector<SlotChoice> slot_choices(const Instance& inst, const Plan& plan) {
  std::vector<SlotChoice> out;
  for (const auto& [id, rec] : plan.assignments) {
    if (!rec.option) {
      continue;
    }
    const auto& order = inst.orders[static_cast<std::size_t>(inst.order_index(id))];
    out.push_back({id, *rec.option, (*order.wtp)[static_cast<std::size_t>(*rec.option)]});
  }
  return out;
}

SlotSolution solve_f2(const Instance& inst, const SolverConfig& cfg) {
  return F2Search(inst, cfg, false).run();
}

SlotSolution solve_f2_lex(const Instance& inst, const SolverConfig& cfg) {
  return F2Search(inst, cfg, true).run();
}

}  // namespace sdd
