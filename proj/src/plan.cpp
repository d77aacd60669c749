#include "sdd/plan.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sdd/geometry.hpp"

namespace sdd {

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::F1:
      return "F1";
    case ModelKind::F2:
      return "F2";
    case ModelKind::F2Lex:
      return "F2LEX";
    case ModelKind::F3:
      return "F3";
    case ModelKind::F4:
      return "F4";
  }
  return "?";
}

std::optional<ModelKind> parse_model(std::string_view text) {
  std::string up;
  for (char c : text) {
    up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (auto k : {ModelKind::F1, ModelKind::F2, ModelKind::F2Lex, ModelKind::F3, ModelKind::F4}) {
    if (model_name(k) == up) {
      return k;
    }
  }
  return std::nullopt;
}

std::vector<int> Plan::served_ids() const {
  std::vector<int> ids;
  ids.reserve(assignments.size());
  for (const auto& [id, rec] : assignments) {
    ids.push_back(id);
  }
  return ids;
}

bool PlanVerdict::has(std::string_view tag) const {
  return std::ranges::any_of(violations, [&](const Violation& v) { return v.tag == tag; });
}

std::vector<std::string> PlanVerdict::tags() const {
  std::set<std::string> uniq;
  for (const auto& v : violations) {
    uniq.insert(v.tag);
  }
  return {uniq.begin(), uniq.end()};
}

namespace {

const Location* node_location(const Instance& inst, ModelKind model, int id) {
  if (id == 0) {
    return &inst.depot;
  }
  if (is_station_model(model)) {
    const int idx = inst.station_index(id);
    return idx < 0 ? nullptr : &inst.stations[static_cast<std::size_t>(idx)].loc;
  }
  const int idx = inst.order_index(id);
  return idx < 0 ? nullptr : &inst.orders[static_cast<std::size_t>(idx)].loc;
}

std::string prefix(ModelKind model) {
  return model == ModelKind::F2Lex ? std::string("F2") : std::string(model_name(model));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

class Checker {
 public:
  Checker(const Instance& inst, const Plan& plan, CheckOptions opts)
      : inst_(inst), plan_(plan), opts_(opts), pre_(prefix(plan.model)) {}

  PlanVerdict run() {
    check_model_data();
    if (!verdict_.ok()) {
      return std::move(verdict_);
    }
    check_routes();
    check_partition();
    if (!structural_ok_) {
      return std::move(verdict_);
    }
    check_timing();
    if (is_station_model(plan_.model)) {
      check_stations();
    } else {
      check_customer_routes();
    }
    return std::move(verdict_);
  }

 private:
  void add(std::string tag, double slack, std::string detail) {
    verdict_.violations.push_back({std::move(tag), slack, std::move(detail)});
  }
  void structural(std::string detail) {
    structural_ok_ = false;
    add("structure", 0.0, std::move(detail));
  }

  void check_model_data() {
    if (is_slot_model(plan_.model) && !inst_.supports_slots()) {
      add("structure", 0.0, "instance lacks deadline options or WTP vectors");
    }
    if (is_station_model(plan_.model) && !inst_.supports_stations()) {
      add("structure", 0.0, "instance lacks feasible pickup stations");
    }
  }

  void check_routes() {
    lengths_.resize(plan_.trips.size(), 0.0);
    for (std::size_t k = 0; k < plan_.trips.size(); ++k) {
      const auto& route = plan_.trips[k].route;
      const std::string where = "trip " + std::to_string(k);
      if (route.size() < 3 || route.front() != 0 || route.back() != 0) {
        structural(where + ": route must start and end at the depot and visit a node");
        continue;
      }
      std::set<int> seen;
      bool known = true;
      for (std::size_t i = 1; i + 1 < route.size(); ++i) {
        if (route[i] == 0 || node_location(inst_, plan_.model, route[i]) == nullptr) {
          structural(where + ": unknown node " + std::to_string(route[i]));
          known = false;
        } else if (!seen.insert(route[i]).second) {
          structural(where + ": node " + std::to_string(route[i]) + " visited twice");
        }
      }
      if (!std::isfinite(plan_.trips[k].start)) {
        structural(where + ": non-finite start");
      }
      if (known) {
        lengths_[k] = trip_length(inst_, plan_.model, route);
      }
      if (plan_.model == ModelKind::F3 && route.size() != 3) {
        add("F3-single-station", 0.0, where + " visits " + std::to_string(route.size() - 2) +
                                          " stations");
      }
    }
    if (static_cast<int>(plan_.trips.size()) > inst_.trip_bound()) {
      add("trip-count", static_cast<double>(plan_.trips.size()) - inst_.trip_bound(),
          std::to_string(plan_.trips.size()) + " trips exceed the bound " +
              std::to_string(inst_.trip_bound()));
    }
  }

  void check_partition() {
    std::set<int> unserved;
    for (int id : plan_.unserved) {
      if (inst_.order_index(id) < 0) {
        structural("unserved list names unknown order " + std::to_string(id));
      } else if (!unserved.insert(id).second) {
        structural("order " + std::to_string(id) + " listed twice as unserved");
      }
    }
    for (const auto& [id, rec] : plan_.assignments) {
      const std::string who = "order " + std::to_string(id);
      if (inst_.order_index(id) < 0) {
        structural("assignment for unknown order " + std::to_string(id));
        continue;
      }
      if (unserved.contains(id)) {
        structural(who + " is both served and unserved");
      }
      if (rec.trip < 0 || rec.trip >= static_cast<int>(plan_.trips.size())) {
        structural(who + ": trip index " + std::to_string(rec.trip) + " out of range");
      }
      if (!std::isfinite(rec.delivery_time)) {
        structural(who + ": non-finite delivery time");
      }
      const bool needs_option = is_slot_model(plan_.model);
      const bool needs_station = is_station_model(plan_.model);
      if (rec.option.has_value() != needs_option) {
        structural(who + (needs_option ? ": missing option" : ": unexpected option"));
      } else if (needs_option &&
                 (*rec.option < 0 || *rec.option >= static_cast<int>(inst_.num_options()))) {
        structural(who + ": option index " + std::to_string(*rec.option) + " out of range");
      }
      if (rec.station.has_value() != needs_station) {
        structural(who + (needs_station ? ": missing station" : ": unexpected station"));
      } else if (needs_station && inst_.station_index(*rec.station) < 0) {
        structural(who + ": unknown station " + std::to_string(*rec.station));
      }
    }
    for (const auto& o : inst_.orders) {
      if (!plan_.assignments.contains(o.id) && !unserved.contains(o.id)) {
        structural("order " + std::to_string(o.id) + " is neither served nor unserved");
      }
    }
  }

  double end_of(std::size_t k) const { return plan_.trips[k].start + lengths_[k]; }

  void check_timing() {
    const auto n = plan_.trips.size();
    const std::string chain = pre_ + "-chaining";
    const std::string horizon = pre_ + "-horizon";
    const bool strict = plan_.model == ModelKind::F1 && !opts_.relaxed_chaining;
    for (std::size_t k = 0; k < n; ++k) {
      const double start = plan_.trips[k].start;
      if (start < -kEps) {
        add(horizon, -start, "trip " + std::to_string(k) + " starts before time 0");
      }
      if (k + 1 < n) {
        const double gap = plan_.trips[k + 1].start - end_of(k);
        if (gap < -kEps || (strict && gap > kEps)) {
          add(chain, std::abs(gap),
              "trip " + std::to_string(k + 1) + " starts at " + fmt(plan_.trips[k + 1].start) +
                  " but trip " + std::to_string(k) + " ends at " + fmt(end_of(k)));
        }
      }
    }
    if (n > 0) {
      const double last = end_of(n - 1);
      const double over = last - inst_.horizon;
      if (over > kEps || (strict && over < -kEps)) {
        add(horizon, std::abs(over),
            "last trip ends at " + fmt(last) + ", horizon " + fmt(inst_.horizon));
      }
    }
    // a trip may only carry parcels released by its start
    for (const auto& [id, rec] : plan_.assignments) {
      const auto& order = inst_.orders[static_cast<std::size_t>(inst_.order_index(id))];
      const double start = plan_.trips[static_cast<std::size_t>(rec.trip)].start;
      if (start < order.release - kEps) {
        add(pre_ + "-release", order.release - start,
            "order " + std::to_string(id) + " released at " + fmt(order.release) +
                " but trip " + std::to_string(rec.trip) + " starts at " + fmt(start));
      }
    }
  }

  // F1/F2: routes visit exactly the orders assigned to them.
  void check_customer_routes() {
    std::unordered_map<int, std::vector<std::pair<std::size_t, double>>> visits;
    for (std::size_t k = 0; k < plan_.trips.size(); ++k) {
      const auto& route = plan_.trips[k].route;
      double t = plan_.trips[k].start;
      for (std::size_t i = 1; i + 1 < route.size(); ++i) {
        t += euclidean(*node_location(inst_, plan_.model, route[i - 1]),
                       *node_location(inst_, plan_.model, route[i]));
        visits[route[i]].emplace_back(k, t);
      }
    }
    for (const auto& [id, trips] : visits) {
      if (trips.size() > 1) {
        add(pre_ + "-single-visit", static_cast<double>(trips.size() - 1),
            "order " + std::to_string(id) + " visited by " + std::to_string(trips.size()) +
                " trips");
      }
      const auto it = plan_.assignments.find(id);
      if (it == plan_.assignments.end()) {
        add(pre_ + "-degree", 0.0, "order " + std::to_string(id) + " visited but not served");
      }
    }
    for (const auto& [id, rec] : plan_.assignments) {
      const std::string who = "order " + std::to_string(id);
      const auto vit = visits.find(id);
      const std::pair<std::size_t, double>* visit = nullptr;
      if (vit != visits.end()) {
        for (const auto& v : vit->second) {
          if (static_cast<int>(v.first) == rec.trip) {
            visit = &v;
          }
        }
      }
      if (visit == nullptr) {
        add(pre_ + "-degree", 0.0, who + " is not on the route of trip " +
                                       std::to_string(rec.trip));
        continue;
      }
      const double arrival = visit->second;
      if (std::abs(rec.delivery_time - arrival) > kEps) {
        add(pre_ + "-arrival", std::abs(rec.delivery_time - arrival),
            who + ": delivery time " + fmt(rec.delivery_time) + " but route arrival " +
                fmt(arrival));
      }
      if (is_slot_model(plan_.model)) {
        const auto& order = inst_.orders[static_cast<std::size_t>(inst_.order_index(id))];
        const double due =
            order.release + inst_.options->deadlines[static_cast<std::size_t>(*rec.option)];
        if (arrival > due + kEps) {
          add("F2-deadline", arrival - due,
              who + " arrives at " + fmt(arrival) + " after its deadline " + fmt(due));
        }
      }
    }
  }

  void check_stations() {
    const std::string pre = pre_;
    std::map<int, int> per_station;
    std::map<std::pair<std::size_t, int>, int> per_visit;
    for (const auto& [id, rec] : plan_.assignments) {
      const std::string who = "order " + std::to_string(id);
      const auto& order = inst_.orders[static_cast<std::size_t>(inst_.order_index(id))];
      const int sid = *rec.station;
      const auto& feas = *order.feasible_stations;
      if (std::ranges::find(feas, sid) == feas.end()) {
        add(pre + "-radius", 0.0, who + " assigned to station " + std::to_string(sid) +
                                      " outside its radius");
      }
      ++per_station[sid];
      const auto k = static_cast<std::size_t>(rec.trip);
      const auto& trip = plan_.trips[k];
      const auto pos = std::ranges::find(trip.route, sid);
      if (pos == trip.route.end()) {
        add(pre + "-degree", 0.0, who + ": station " + std::to_string(sid) +
                                      " is not visited by trip " + std::to_string(k));
        continue;
      }
      ++per_visit[{k, sid}];
      double arrival = trip.start;
      for (auto it = trip.route.begin() + 1; it <= pos; ++it) {
        arrival += euclidean(*node_location(inst_, plan_.model, *(it - 1)),
                             *node_location(inst_, plan_.model, *it));
      }
      if (std::abs(rec.delivery_time - arrival) > kEps) {
        add(plan_.model == ModelKind::F3 ? "F3-pickup" : "F4-arrival",
            std::abs(rec.delivery_time - arrival),
            who + ": pickup time " + fmt(rec.delivery_time) + " but station reached at " +
                fmt(arrival));
      }
    }
    for (const auto& [sid, count] : per_station) {
      const auto& st = inst_.stations[static_cast<std::size_t>(inst_.station_index(sid))];
      if (count > st.capacity) {
        add(pre + "-capacity", static_cast<double>(count - st.capacity),
            "station " + std::to_string(sid) + " receives " + std::to_string(count) +
                " parcels, capacity " + std::to_string(st.capacity));
      }
    }
    for (std::size_t k = 0; k < plan_.trips.size(); ++k) {
      const auto& route = plan_.trips[k].route;
      for (std::size_t i = 1; i + 1 < route.size(); ++i) {
        if (!per_visit.contains({k, route[i]})) {
          add(pre + "-no-empty-visit", 0.0, "trip " + std::to_string(k) + " visits station " +
                                                std::to_string(route[i]) +
                                                " without delivering");
        }
      }
    }
  }

  const Instance& inst_;
  const Plan& plan_;
  CheckOptions opts_;
  std::string pre_;
  PlanVerdict verdict_;
  bool structural_ok_ = true;
  std::vector<double> lengths_;
};

std::string describe(const PlanVerdict& v) {
  std::ostringstream os;
  os << "plan is invalid:";
  for (const auto& x : v.violations) {
    os << " [" << x.tag << "] " << x.detail << ";";
  }
  return os.str();
}

}  // namespace

double trip_length(const Instance& inst, ModelKind model, const std::vector<int>& route) {
  double total = 0.0;
  for (std::size_t i = 1; i < route.size(); ++i) {
    const Location* a = node_location(inst, model, route[i - 1]);
    const Location* b = node_location(inst, model, route[i]);
    if (a == nullptr || b == nullptr) {
      throw std::invalid_argument("route names an unknown node");
    }
    total += euclidean(*a, *b);
  }
  return total;
}

void recompute_ends(const Instance& inst, Plan& plan) {
  for (auto& trip : plan.trips) {
    trip.end = trip.start + trip_length(inst, plan.model, trip.route);
  }
}

PlanVerdict validate_plan(const Instance& inst, const Plan& plan, CheckOptions opts) {
  return Checker(inst, plan, opts).run();
}

double eval_objective(const Instance& inst, const Plan& plan) {
  const auto verdict = validate_plan(inst, plan);
  if (!verdict.ok()) {
    throw std::invalid_argument(describe(verdict));
  }
  switch (plan.model) {
    case ModelKind::F1:
      return static_cast<double>(plan.assignments.size());
    case ModelKind::F2:
    case ModelKind::F2Lex: {
      double revenue = 0.0;
      for (const auto& [id, rec] : plan.assignments) {
        const auto& order = inst.orders[static_cast<std::size_t>(inst.order_index(id))];
        revenue += (*order.wtp)[static_cast<std::size_t>(*rec.option)];
      }
      return revenue;
    }
    case ModelKind::F3:
    case ModelKind::F4: {
      double total = 0.0;
      for (const auto& o : inst.orders) {
        const auto it = plan.assignments.find(o.id);
        const double pickup = it == plan.assignments.end() ? inst.penalty() : it->second.delivery_time;
        total += pickup - o.release;
      }
      return total;
    }
  }
  return 0.0;
}

MetricsReport metrics_unchecked(const Instance& inst, const Plan& plan) {
  MetricsReport m;
  for (const auto& trip : plan.trips) {
    m.distance += trip_length(inst, plan.model, trip.route);
  }
  m.trips = static_cast<int>(plan.trips.size());
  m.served = static_cast<int>(plan.assignments.size());
  m.service_rate =
      inst.orders.empty() ? 0.0 : static_cast<double>(m.served) / static_cast<double>(inst.orders.size());
  if (m.served > 0) {
    double sum = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (const auto& [id, rec] : plan.assignments) {
      const auto& order = inst.orders[static_cast<std::size_t>(inst.order_index(id))];
      const double wait = rec.delivery_time - order.release;
      sum += wait;
      lo = first ? wait : std::min(lo, wait);
      hi = first ? wait : std::max(hi, wait);
      first = false;
    }
    m.avg_wait = sum / m.served;
    m.max_wait = hi;
    m.min_wait = lo;
    m.wait_variability = hi - lo;
  }
  return m;
}

MetricsReport compute_metrics(const Instance& inst, const Plan& plan) {
  const auto verdict = validate_plan(inst, plan);
  if (!verdict.ok()) {
    throw std::invalid_argument(describe(verdict));
  }
  return metrics_unchecked(inst, plan);
}

}  // namespace sdd
