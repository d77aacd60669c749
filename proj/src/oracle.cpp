#include "sdd/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <iterator>
#include <map>
#include <optional>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>

namespace sdd {

OracleGuard OracleGuard::from_env() {
  OracleGuard g;
  const char* raw = std::getenv("SDD_ORACLE_LIMIT");
  if (raw == nullptr || *raw == '\0') {
    return g;
  }
  std::stringstream ss(raw);
  std::string part;
  int* fields[] = {&g.max_orders, &g.max_stations, &g.max_options};
  for (int* f : fields) {
    if (!std::getline(ss, part, ',')) {
      break;
    }
    try {
      const int v = std::stoi(part);
      if (v > 0) {
        *f = v;
      }
    } catch (const std::exception&) {
      // malformed override: keep the default
    }
  }
  return g;
}

namespace {

struct Candidate {
  double objective = 0.0;
  int served = 0;
  int trips = 0;
  double distance = 0.0;
  std::vector<int> ids;
  Plan plan;
};

int cmp_tol(double a, double b) {
  if (a < b - kEps) {
    return -1;
  }
  return a > b + kEps ? 1 : 0;
}

/// Model-specific preference between two valid candidates.
bool prefer(ModelKind model, const Candidate& a, const Candidate& b) {
  if (model == ModelKind::F2Lex && a.served != b.served) {
    return a.served > b.served;
  }
  if (const int c = cmp_tol(a.objective, b.objective); c != 0) {
    return is_station_model(model) ? c < 0 : c > 0;
  }
  if (is_station_model(model) && a.served != b.served) {
    return a.served > b.served;
  }
  if (a.trips != b.trips) {
    return a.trips < b.trips;
  }
  if (const int c = cmp_tol(a.distance, b.distance); c != 0) {
    return c < 0;
  }
  return a.ids < b.ids;
}

// A trip under construction: stops in visiting order; each stop is a node id
// (order id or station id) with the orders it serves.
struct TripDraft {
  std::vector<std::pair<int, std::vector<int>>> stops;
};

class Enumerator {
 public:
  Enumerator(const Instance& inst, ModelKind model) : inst_(inst), model_(model) {
    for (const auto& o : inst.orders) {
      release_[o.id] = o.release;
    }
  }

  SolveReport run() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TripDraft> trips;
    std::vector<int> remaining;
    for (const auto& o : inst_.orders) {
      remaining.push_back(o.id);
    }
    std::vector<int> used(inst_.stations.size(), 0);
    recurse(trips, remaining, used);

    SolveReport rep;
    rep.model = model_;
    rep.optimal = true;
    rep.nodes_explored = checked_;
    rep.objective = best_->objective;
    rep.plan = best_->plan;
    if (is_station_model(model_)) {
      rep.station_extras = station_extras(inst_, rep.plan);
    }
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

 private:
  double leg(int a, int b) const { return trip_length(inst_, model_, {a, b}); }

  double draft_length(const TripDraft& d) const {
    std::vector<int> route{0};
    for (const auto& s : d.stops) {
      route.push_back(s.first);
    }
    route.push_back(0);
    return trip_length(inst_, model_, route);
  }

  double draft_release(const TripDraft& d) const {
    double r = 0.0;
    for (const auto& s : d.stops) {
      for (int id : s.second) {
        r = std::max(r, release_.at(id));
      }
    }
    return r;
  }

  /// Earliest-start end time of the sequence (all models share it as a
  /// feasibility test: no extension can finish earlier).
  double forward_end(const std::vector<TripDraft>& trips) const {
    double t = 0.0;
    for (const auto& d : trips) {
      t = std::max(t, draft_release(d)) + draft_length(d);
    }
    return t;
  }

  int best_option(int id, double arrival) const {
    const auto& o = inst_.orders[static_cast<std::size_t>(inst_.order_index(id))];
    int pick = -1;
    for (std::size_t k = 0; k < inst_.options->deadlines.size(); ++k) {
      if (arrival <= o.release + inst_.options->deadlines[k] + kEps &&
          (pick < 0 || (*o.wtp)[k] > (*o.wtp)[static_cast<std::size_t>(pick)])) {
        pick = static_cast<int>(k);
      }
    }
    return pick;
  }

  Plan build(const std::vector<TripDraft>& trips) const {
    Plan plan;
    plan.model = model_;
    std::vector<double> starts(trips.size());
    if (model_ == ModelKind::F1) {
      // back-to-back, last trip ending at the horizon
      double t = inst_.horizon;
      for (std::size_t k = trips.size(); k-- > 0;) {
        t -= draft_length(trips[k]);
        starts[k] = t;
      }
    } else {
      double t = 0.0;
      for (std::size_t k = 0; k < trips.size(); ++k) {
        starts[k] = std::max(t, draft_release(trips[k]));
        t = starts[k] + draft_length(trips[k]);
      }
    }
    for (std::size_t k = 0; k < trips.size(); ++k) {
      Trip trip;
      trip.start = starts[k];
      trip.route.push_back(0);
      double t = starts[k];
      int prev = 0;
      for (const auto& [node, ids] : trips[k].stops) {
        t += leg(prev, node);
        prev = node;
        trip.route.push_back(node);
        for (int id : ids) {
          AssignmentRecord rec{static_cast<int>(k), std::nullopt, std::nullopt, t};
          if (is_slot_model(model_)) {
            rec.option = best_option(id, t);
            if (*rec.option < 0) {
              rec.option = 0;  // reported by the checker as a missed deadline
            }
          }
          if (is_station_model(model_)) {
            rec.station = node;
          }
          plan.assignments[id] = rec;
        }
      }
      trip.route.push_back(0);
      trip.end = t + leg(prev, 0);
      plan.trips.push_back(std::move(trip));
    }
    for (const auto& o : inst_.orders) {
      if (!plan.assignments.contains(o.id)) {
        plan.unserved.push_back(o.id);
      }
    }
    return plan;
  }

  void consider(const std::vector<TripDraft>& trips) {
    ++checked_;
    Plan plan = build(trips);
    if (!validate_plan(inst_, plan).ok()) {
      return;
    }
    Candidate c;
    c.objective = eval_objective(inst_, plan);
    c.served = static_cast<int>(plan.assignments.size());
    c.trips = static_cast<int>(plan.trips.size());
    c.distance = metrics_unchecked(inst_, plan).distance;
    c.ids = plan.served_ids();
    c.plan = std::move(plan);
    if (!best_ || prefer(model_, c, *best_)) {
      best_ = std::move(c);
    }
  }

  void recurse(std::vector<TripDraft>& trips, std::vector<int>& remaining,
               std::vector<int>& used) {
    consider(trips);
    if (static_cast<int>(trips.size()) >= inst_.trip_bound() || remaining.empty()) {
      return;
    }
    TripDraft draft;
    grow(trips, draft, remaining, used);
  }

  bool prefix_feasible(std::vector<TripDraft>& trips, const TripDraft& draft) const {
    trips.push_back(draft);
    const bool ok = forward_end(trips) <= inst_.horizon + kEps;
    trips.pop_back();
    return ok;
  }

  // Adds one more stop to `draft`, then either closes the trip (and recurses
  // on the next one) or keeps extending it.
  void grow(std::vector<TripDraft>& trips, TripDraft& draft, std::vector<int>& remaining,
            std::vector<int>& used) {
    if (is_station_model(model_)) {
      if (model_ == ModelKind::F3 && !draft.stops.empty()) {
        return;
      }
      for (std::size_t s = 0; s < inst_.stations.size(); ++s) {
        const int sid = inst_.stations[s].id;
        if (std::ranges::any_of(draft.stops, [&](const auto& st) { return st.first == sid; })) {
          continue;
        }
        std::vector<int> eligible;
        for (int id : remaining) {
          const auto& fs = *inst_.orders[static_cast<std::size_t>(inst_.order_index(id))]
                                .feasible_stations;
          if (std::ranges::find(fs, sid) != fs.end()) {
            eligible.push_back(id);
          }
        }
        const auto n = eligible.size();
        for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
          std::vector<int> chosen;
          for (std::size_t b = 0; b < n; ++b) {
            if ((mask >> b & 1U) != 0) {
              chosen.push_back(eligible[b]);
            }
          }
          const int count = static_cast<int>(chosen.size());
          if (used[s] + count > inst_.stations[s].capacity) {
            continue;
          }
          draft.stops.emplace_back(sid, chosen);
          if (prefix_feasible(trips, draft)) {
            used[s] += count;
            std::vector<int> rest;
            std::ranges::set_difference(remaining, chosen, std::back_inserter(rest));
            close_and_extend(trips, draft, rest, used);
            used[s] -= count;
          }
          draft.stops.pop_back();
        }
      }
      return;
    }
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const int id = remaining[i];
      draft.stops.emplace_back(id, std::vector<int>{id});
      if (prefix_feasible(trips, draft)) {
        std::vector<int> rest = remaining;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        close_and_extend(trips, draft, rest, used);
      }
      draft.stops.pop_back();
    }
  }

  void close_and_extend(std::vector<TripDraft>& trips, TripDraft& draft, std::vector<int>& rest,
                        std::vector<int>& used) {
    trips.push_back(draft);
    recurse(trips, rest, used);
    trips.pop_back();
    if (!rest.empty()) {
      grow(trips, draft, rest, used);
    }
  }

  const Instance& inst_;
  ModelKind model_;
  std::map<int, double> release_;
  std::optional<Candidate> best_;
  std::uint64_t checked_ = 0;
};

}  // namespace

SolveReport oracle_solve(const Instance& inst, ModelKind model, const OracleGuard& guard) {
  if (static_cast<int>(inst.orders.size()) > guard.max_orders) {
    throw GuardExceeded("oracle: " + std::to_string(inst.orders.size()) + " orders > guard " +
                        std::to_string(guard.max_orders));
  }
  if (is_station_model(model) && static_cast<int>(inst.stations.size()) > guard.max_stations) {
    throw GuardExceeded("oracle: " + std::to_string(inst.stations.size()) +
                        " stations > guard " + std::to_string(guard.max_stations));
  }
  if (is_slot_model(model)) {
    if (!inst.supports_slots()) {
      throw ConfigError("slot models need deadline options and a WTP vector per order");
    }
    if (static_cast<int>(inst.num_options()) > guard.max_options) {
      throw GuardExceeded("oracle: " + std::to_string(inst.num_options()) +
                          " options > guard " + std::to_string(guard.max_options));
    }
  }
  if (is_station_model(model)) {
    if (!inst.supports_stations()) {
      throw ConfigError("station models need feasible stations per order");
    }
    if (inst.penalty() < inst.horizon - kEps) {
      throw ConfigError("big_m must be at least the horizon");
    }
  }
  return Enumerator(inst, model).run();
}

}  // namespace sdd
