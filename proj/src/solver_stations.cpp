// Pickup-station delivery: direct trips (one station per trip) and routed
// trips (several stations per trip).
//
// Objective: sum over orders of (earliest pickup time - release), where an
// unserved order is charged big_m. Trips run forward and start as early as
// possible. The next trip is enumerated as an ordered sequence of station
// stops, each stop carrying a nonempty set of parcels that fit the station's
// remaining capacity (direct trips stop once). Station capacity is the only
// coupling across trips, so the memo key is (served set, capacity used per
// station) with a Pareto front over (end time, cost, trips, distance).
//
// Routed trips enumerate every stop order, not only shortest tours: when a
// stop carries many parcels, reaching it first can beat the shortest tour.

#include <algorithm>
#include <limits>
#include <map>

#include "sdd/geometry.hpp"
#include "sdd/solve.hpp"
#include "search.hpp"

namespace sdd {

namespace {

using detail::Budget;
using detail::cmp_eps;

struct Stop {
  int station;           // local station index
  std::uint32_t parcels; // order mask
  double offset;         // travel time from trip start
};

struct PlannedTrip {
  std::vector<Stop> stops;
  double start = 0.0;
  double length = 0.0;
};

struct MemoEntry {
  double end;
  double cost;
  int trips;
  double distance;
};

class StationSearch {
 public:
  StationSearch(const Instance& inst, const SolverConfig& cfg, bool routed)
      : inst_(inst), dist_(station_matrix(inst)), budget_(cfg),
        max_trips_(detail::resolved_trip_bound(inst, cfg)), routed_(routed),
        penalty_(inst.penalty()) {
    if (!inst.supports_stations()) {
      throw ConfigError(
          "station models need feasible stations per order (explicit lists or a radius)");
    }
    if (penalty_ < inst.horizon - kEps) {
      throw ConfigError("big_m must be at least the horizon so serving never costs more "
                        "than the penalty");
    }
    const std::size_t ns = inst.stations.size();
    capacity_.resize(ns);
    d0_.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      capacity_[s] = inst.stations[s].capacity;
      d0_[s] = dist_(0, s + 1);
    }
    // orders with no usable station are charged the penalty and never branched on
    for (std::size_t i = 0; i < inst.orders.size(); ++i) {
      const auto& o = inst.orders[i];
      std::uint32_t usable = 0;
      for (int sid : *o.feasible_stations) {
        const auto s = static_cast<std::size_t>(inst.station_index(sid));
        if (capacity_[s] > 0 && o.release + 2.0 * d0_[s] <= inst.horizon + kEps) {
          usable |= 1U << s;
        }
      }
      if (usable != 0) {
        index_.push_back(i);
        stations_of_.push_back(usable);
      }
      base_penalty_ += penalty_ - o.release;
    }
    detail::require_mask_capacity(index_.size(), routed ? "solve_f4" : "solve_f3");
    if (ns > 30) {
      throw GuardExceeded("station solvers support at most 30 stations");
    }
    k_ = index_.size();
    release_.resize(k_);
    for (std::size_t p = 0; p < k_; ++p) {
      release_[p] = inst.orders[index_[p]].release;
    }
    parcels_at_.assign(ns, 0);
    for (std::size_t p = 0; p < k_; ++p) {
      for (std::size_t s = 0; s < ns; ++s) {
        if ((stations_of_[p] >> s & 1U) != 0) {
          parcels_at_[s] |= 1U << p;
        }
      }
    }
  }

  SolveReport run() {
    std::vector<int> used(inst_.stations.size(), 0);
    std::vector<PlannedTrip> path;
    outer(0, used, 0.0, 0.0, 0.0, path);
    return report();
  }

 private:
  // `saving` accumulated along the path is the objective minus the
  // all-unserved baseline (always <= 0).
  struct Key {
    double objective;
    int served;
    int trips;
    double distance;
    std::vector<int> ids;
  };

  bool better(const Key& k) const {
    if (!have_best_) {
      return true;
    }
    if (const int c = cmp_eps(k.objective, best_.objective); c != 0) {
      return c < 0;
    }
    if (k.served != best_.served) {
      return k.served > best_.served;
    }
    if (k.trips != best_.trips) {
      return k.trips < best_.trips;
    }
    if (const int c = cmp_eps(k.distance, best_.distance); c != 0) {
      return c < 0;
    }
    return k.ids < best_.ids;
  }

  std::vector<int> ids_of(std::uint32_t mask) const {
    std::vector<int> ids;
    for (int p : detail::bits_of(mask)) {
      ids.push_back(inst_.orders[index_[static_cast<std::size_t>(p)]].id);
    }
    std::ranges::sort(ids);
    return ids;
  }

  bool dominated(std::uint32_t served, const std::vector<int>& used, const MemoEntry& e) {
    std::vector<int> key;
    key.reserve(used.size() + 1);
    key.push_back(static_cast<int>(served));
    key.insert(key.end(), used.begin(), used.end());
    auto& seen = memo_[key];
    for (const auto& s : seen) {
      if (s.end <= e.end + 1e-12 && s.cost <= e.cost + 1e-12 && s.trips <= e.trips &&
          s.distance <= e.distance + 1e-12) {
        return true;
      }
    }
    std::erase_if(seen, [&](const MemoEntry& s) {
      return e.end <= s.end && e.cost <= s.cost && e.trips <= s.trips && e.distance <= s.distance;
    });
    seen.push_back(e);
    return false;
  }

  // change in objective when an order is picked up at `pickup` instead of
  // being charged the penalty
  double served_delta(double pickup) const { return pickup - penalty_; }

  void outer(std::uint32_t served, std::vector<int>& used, double end, double saving,
             double distance, std::vector<PlannedTrip>& path) {
    if (!budget_.tick()) {
      return;
    }
    const int trips = static_cast<int>(path.size());
    const Key here{base_penalty_ + saving, std::popcount(served), trips, distance,
                   ids_of(served)};
    if (better(here)) {
      have_best_ = true;
      best_ = here;
      best_path_ = path;
    }
    if (trips >= max_trips_) {
      return;
    }

    // lower bound: each remaining order picked up as soon as any open station allows
    std::uint32_t cand = 0;
    double bound = here.objective;
    for (std::size_t p = 0; p < k_; ++p) {
      if ((served >> p & 1U) != 0) {
        continue;
      }
      const double s = std::max(end, release_[p]);
      double earliest = std::numeric_limits<double>::infinity();
      for (std::size_t st = 0; st < capacity_.size(); ++st) {
        if ((stations_of_[p] >> st & 1U) != 0 && used[st] < capacity_[st] &&
            s + 2.0 * d0_[st] <= inst_.horizon + kEps) {
          earliest = std::min(earliest, s + d0_[st]);
        }
      }
      if (earliest < std::numeric_limits<double>::infinity()) {
        cand |= 1U << p;
        bound += std::min(0.0, served_delta(earliest));
      }
    }
    if (cand == 0) {
      return;
    }
    if (cmp_eps(bound, best_.objective) > 0) {
      return;
    }
    if (dominated(served, used, {end, saving, trips, distance})) {
      return;
    }
    std::vector<Stop> stops;
    extend(served, cand, used, end, saving, distance, 0.0, 0.0, 0, stops, path);
  }

  // Adds one stop (station + parcel set) to the next trip; every prefix is
  // also tried as a complete trip.
  void extend(std::uint32_t served, std::uint32_t cand, std::vector<int>& used, double prev_end,
              double saving, double distance, double max_release, double path_len,
              std::uint32_t visited, std::vector<Stop>& stops, std::vector<PlannedTrip>& path) {
    const int last = stops.empty() ? -1 : stops.back().station;
    for (std::size_t st = 0; st < capacity_.size(); ++st) {
      if ((visited >> st & 1U) != 0) {
        continue;
      }
      const int room = capacity_[st] - used[st];
      const std::uint32_t avail = cand & parcels_at_[st];
      if (room <= 0 || avail == 0) {
        continue;
      }
      const double reach =
          path_len + (last < 0 ? d0_[st]
                               : dist_(static_cast<std::size_t>(last) + 1, st + 1));
      const double length = reach + d0_[st];
      if (std::max(prev_end, max_release) + length > inst_.horizon + kEps) {
        continue;
      }
      for (std::uint32_t sub = avail; sub != 0; sub = (sub - 1) & avail) {
        const int count = std::popcount(sub);
        if (count > room) {
          continue;
        }
        double rel = max_release;
        for (int p : detail::bits_of(sub)) {
          rel = std::max(rel, release_[static_cast<std::size_t>(p)]);
        }
        const double start = std::max(prev_end, rel);
        if (start + length > inst_.horizon + kEps) {
          continue;
        }
        stops.push_back({static_cast<int>(st), sub, reach});
        used[st] += count;

        double gain = 0.0;
        std::uint32_t in_trip = 0;
        for (const auto& stop : stops) {
          gain += std::popcount(stop.parcels) * served_delta(start + stop.offset);
          in_trip |= stop.parcels;
        }
        path.push_back({stops, start, length});
        outer(served | in_trip, used, start + length, saving + gain, distance + length, path);
        path.pop_back();
        if (routed_ && !budget_.exhausted()) {
          extend(served, cand & ~sub, used, prev_end, saving, distance, rel, reach,
                 visited | (1U << st), stops, path);
        }
        used[st] -= count;
        stops.pop_back();
        if (budget_.exhausted()) {
          return;
        }
      }
    }
  }

  SolveReport report() const {
    SolveReport rep;
    rep.model = routed_ ? ModelKind::F4 : ModelKind::F3;
    rep.plan.model = rep.model;
    rep.nodes_explored = budget_.nodes();
    rep.runtime_seconds = budget_.elapsed();
    rep.optimal = !budget_.exhausted();

    for (const auto& pt : best_path_) {
      Trip trip;
      trip.start = pt.start;
      trip.route.push_back(0);
      std::size_t prev = 0;
      double t = pt.start;
      for (const auto& stop : pt.stops) {
        const auto node = static_cast<std::size_t>(stop.station) + 1;
        t += dist_(prev, node);
        prev = node;
        const int sid = inst_.stations[node - 1].id;
        trip.route.push_back(sid);
        for (int p : detail::bits_of(stop.parcels)) {
          const int id = inst_.orders[index_[static_cast<std::size_t>(p)]].id;
          rep.plan.assignments[id] = {static_cast<int>(rep.plan.trips.size()), std::nullopt, sid,
                                      t};
        }
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
    rep.objective = eval_direct(rep.plan);
    if (!rep.optimal) {
      // every served order waits at least its direct travel time
      double lb = base_penalty_;
      for (std::size_t p = 0; p < k_; ++p) {
        double best = 0.0;
        for (std::size_t st = 0; st < capacity_.size(); ++st) {
          if ((stations_of_[p] >> st & 1U) != 0) {
            best = std::min(best, served_delta(release_[p] + d0_[st]));
          }
        }
        lb += best;
      }
      rep.bound_gap = std::max(0.0, rep.objective - lb);
    }
    rep.station_extras = station_extras(inst_, rep.plan);
    return rep;
  }

  double eval_direct(const Plan& plan) const {
    double total = 0.0;
    for (const auto& o : inst_.orders) {
      const auto it = plan.assignments.find(o.id);
      total += (it == plan.assignments.end() ? penalty_ : it->second.delivery_time) - o.release;
    }
    return total;
  }

  const Instance& inst_;
  DistanceMatrix dist_;
  Budget budget_;
  int max_trips_;
  bool routed_;
  double penalty_;
  std::vector<int> capacity_;
  std::vector<double> d0_;
  std::vector<std::size_t> index_;         // local order -> order index
  std::vector<std::uint32_t> stations_of_; // local order -> usable station mask
  std::vector<std::uint32_t> parcels_at_;  // station -> local order mask
  std::vector<double> release_;
  std::size_t k_ = 0;
  double base_penalty_ = 0.0;
  std::map<std::vector<int>, std::vector<MemoEntry>> memo_;

  bool have_best_ = false;
  Key best_{};
  std::vector<PlannedTrip> best_path_;
};

}  // namespace

StationPlanExtras station_extras(const Instance& inst, const Plan& plan) {
  StationPlanExtras out;
  for (const auto& trip : plan.trips) {
    std::vector<StationVisit> visits;
    double t = trip.start;
    for (std::size_t i = 1; i + 1 < trip.route.size(); ++i) {
      t += trip_length(inst, plan.model, {trip.route[i - 1], trip.route[i]});
      visits.push_back({trip.route[i], t});
    }
    out.trips.push_back(std::move(visits));
  }
  for (const auto& [id, rec] : plan.assignments) {
    if (rec.station) {
      out.pickups[id] = {*rec.station, rec.delivery_time};
    }
  }
  return out;
}

SolveReport solve_f3(const Instance& inst, const SolverConfig& cfg) {
  return StationSearch(inst, cfg, false).run();
}

SolveReport solve_f4(const Instance& inst, const SolverConfig& cfg) {
  return StationSearch(inst, cfg, true).run();
}

SolveReport solve(const Instance& inst, ModelKind model, const SolverConfig& cfg) {
  switch (model) {
    case ModelKind::F1:
      return solve_f1(inst, cfg);
    case ModelKind::F2:
      return solve_f2(inst, cfg).report;
    case ModelKind::F2Lex:
      return solve_f2_lex(inst, cfg).report;
    case ModelKind::F3:
      return solve_f3(inst, cfg);
    case ModelKind::F4:
      return solve_f4(inst, cfg);
  }
  return {};
}

}  // namespace sdd
