#include "sdd/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace sdd {

namespace {

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) {
    throw FormatError(where + ": expected an object");
  }
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.contains(key)) {
      throw FormatError(where + ": unknown key \"" + key + "\"");
    }
  }
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw FormatError(where + ": missing key \"" + key + "\"");
  }
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) {
    throw FormatError(where + ": expected a number");
  }
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    throw FormatError(where + ": expected an integer");
  }
  return j.get<int>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) {
    throw FormatError(where + ": expected an array");
  }
  return j;
}

Location location(const Json& j, const std::string& where) {
  return {number(need(j, "x", where), where + ".x"), number(need(j, "y", where), where + ".y")};
}

ReleaseDist release_dist_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) {
    throw FormatError(where + ": expected an object");
  }
  const auto& kind = need(j, "kind", where);
  if (!kind.is_string()) {
    throw FormatError(where + ".kind: expected a string");
  }
  const auto k = kind.get<std::string>();
  if (k == "point") {
    only_keys(j, {"kind", "t"}, where);
    return PointRelease{number(need(j, "t", where), where + ".t")};
  }
  if (k == "uniform") {
    only_keys(j, {"kind", "lo", "hi"}, where);
    return UniformRelease{number(need(j, "lo", where), where + ".lo"),
                          number(need(j, "hi", where), where + ".hi")};
  }
  if (k == "discrete") {
    only_keys(j, {"kind", "points"}, where);
    DiscreteRelease d;
    for (const auto& p : array(need(j, "points", where), where + ".points")) {
      if (!p.is_array() || p.size() != 2) {
        throw FormatError(where + ".points: each entry must be [time, probability]");
      }
      d.points.emplace_back(number(p[0], where + ".points"), number(p[1], where + ".points"));
    }
    return d;
  }
  throw FormatError(where + ".kind: unknown distribution \"" + k + "\"");
}

Json release_dist_to_json(const ReleaseDist& dist) {
  Json j;
  if (const auto* p = std::get_if<PointRelease>(&dist)) {
    j["kind"] = "point";
    j["t"] = p->t;
  } else if (const auto* u = std::get_if<UniformRelease>(&dist)) {
    j["kind"] = "uniform";
    j["lo"] = u->lo;
    j["hi"] = u->hi;
  } else {
    j["kind"] = "discrete";
    j["points"] = Json::array();
    for (const auto& [t, p] : std::get<DiscreteRelease>(dist).points) {
      j["points"].push_back(Json::array({t, p}));
    }
  }
  return j;
}

}  // namespace

Instance instance_from_json(const Json& j) {
  only_keys(j,
            {"horizon", "depot", "options", "radius", "big_m", "max_trips", "orders", "stations"},
            "instance");
  Instance inst;
  inst.horizon = number(need(j, "horizon", "instance"), "horizon");
  const auto& depot = need(j, "depot", "instance");
  only_keys(depot, {"x", "y"}, "depot");
  inst.depot = location(depot, "depot");
  if (const auto it = j.find("options"); it != j.end()) {
    only_keys(*it, {"deadlines"}, "options");
    OptionSet opts;
    for (const auto& d : array(need(*it, "deadlines", "options"), "options.deadlines")) {
      opts.deadlines.push_back(number(d, "options.deadlines"));
    }
    inst.options = opts;
  }
  if (const auto it = j.find("radius"); it != j.end()) {
    inst.radius = number(*it, "radius");
  }
  if (const auto it = j.find("big_m"); it != j.end()) {
    inst.big_m = number(*it, "big_m");
  }
  if (const auto it = j.find("max_trips"); it != j.end()) {
    inst.max_trips = integer(*it, "max_trips");
  }
  if (const auto it = j.find("orders"); it != j.end()) {
    std::size_t n = 0;
    for (const auto& o : array(*it, "orders")) {
      const std::string where = "orders[" + std::to_string(n++) + "]";
      only_keys(o, {"id", "x", "y", "release", "wtp", "stations", "release_dist"}, where);
      Order order;
      order.id = integer(need(o, "id", where), where + ".id");
      order.loc = location(o, where);
      order.release = number(need(o, "release", where), where + ".release");
      if (const auto w = o.find("wtp"); w != o.end()) {
        std::vector<double> wtp;
        for (const auto& v : array(*w, where + ".wtp")) {
          wtp.push_back(number(v, where + ".wtp"));
        }
        order.wtp = std::move(wtp);
      }
      if (const auto s = o.find("stations"); s != o.end()) {
        std::vector<int> ids;
        for (const auto& v : array(*s, where + ".stations")) {
          ids.push_back(integer(v, where + ".stations"));
        }
        order.feasible_stations = std::move(ids);
      }
      if (const auto r = o.find("release_dist"); r != o.end()) {
        order.release_dist = release_dist_from_json(*r, where + ".release_dist");
      }
      inst.orders.push_back(std::move(order));
    }
  }
  if (const auto it = j.find("stations"); it != j.end()) {
    std::size_t n = 0;
    for (const auto& s : array(*it, "stations")) {
      const std::string where = "stations[" + std::to_string(n++) + "]";
      only_keys(s, {"id", "x", "y", "capacity"}, where);
      inst.stations.push_back({integer(need(s, "id", where), where + ".id"), location(s, where),
                               integer(need(s, "capacity", where), where + ".capacity")});
    }
  }
  return inst;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["horizon"] = inst.horizon;
  j["depot"] = {{"x", inst.depot.x}, {"y", inst.depot.y}};
  if (inst.options) {
    j["options"] = {{"deadlines", inst.options->deadlines}};
  }
  if (inst.radius) {
    j["radius"] = *inst.radius;
  }
  if (inst.big_m) {
    j["big_m"] = *inst.big_m;
  }
  if (inst.max_trips) {
    j["max_trips"] = *inst.max_trips;
  }
  j["orders"] = Json::array();
  for (const auto& o : inst.orders) {
    Json jo;
    jo["id"] = o.id;
    jo["x"] = o.loc.x;
    jo["y"] = o.loc.y;
    jo["release"] = o.release;
    if (o.wtp) {
      jo["wtp"] = *o.wtp;
    }
    if (o.feasible_stations) {
      jo["stations"] = *o.feasible_stations;
    }
    if (o.release_dist) {
      jo["release_dist"] = release_dist_to_json(*o.release_dist);
    }
    j["orders"].push_back(std::move(jo));
  }
  j["stations"] = Json::array();
  for (const auto& s : inst.stations) {
    j["stations"].push_back({{"id", s.id}, {"x", s.loc.x}, {"y", s.loc.y}, {"capacity", s.capacity}});
  }
  return j;
}

Plan plan_from_json(const Json& j) {
  only_keys(j, {"model_kind", "trips", "assignments", "unserved"}, "plan");
  Plan plan;
  const auto& kind = need(j, "model_kind", "plan");
  if (!kind.is_string()) {
    throw FormatError("plan.model_kind: expected a string");
  }
  const auto model = parse_model(kind.get<std::string>());
  if (!model) {
    throw FormatError("plan.model_kind: unknown model \"" + kind.get<std::string>() + "\"");
  }
  plan.model = *model;
  std::size_t n = 0;
  for (const auto& t : array(need(j, "trips", "plan"), "plan.trips")) {
    const std::string where = "trips[" + std::to_string(n++) + "]";
    // end is accepted for convenience but always recomputed
    only_keys(t, {"route", "start", "end"}, where);
    Trip trip;
    for (const auto& v : array(need(t, "route", where), where + ".route")) {
      trip.route.push_back(integer(v, where + ".route"));
    }
    trip.start = number(need(t, "start", where), where + ".start");
    plan.trips.push_back(std::move(trip));
  }
  n = 0;
  for (const auto& a : array(need(j, "assignments", "plan"), "plan.assignments")) {
    const std::string where = "assignments[" + std::to_string(n++) + "]";
    only_keys(a, {"order", "trip", "option", "station", "delivery_time", "price"}, where);
    const int id = integer(need(a, "order", where), where + ".order");
    AssignmentRecord rec;
    rec.trip = integer(need(a, "trip", where), where + ".trip");
    if (const auto it = a.find("option"); it != a.end()) {
      rec.option = integer(*it, where + ".option");
    }
    if (const auto it = a.find("station"); it != a.end()) {
      rec.station = integer(*it, where + ".station");
    }
    rec.delivery_time = number(need(a, "delivery_time", where), where + ".delivery_time");
    if (!plan.assignments.emplace(id, rec).second) {
      throw FormatError(where + ": order " + std::to_string(id) + " assigned twice");
    }
  }
  if (const auto it = j.find("unserved"); it != j.end()) {
    for (const auto& v : array(*it, "plan.unserved")) {
      plan.unserved.push_back(integer(v, "plan.unserved"));
    }
  }
  return plan;
}

Json plan_to_json(const Plan& plan) {
  Json j;
  j["model_kind"] = std::string(model_name(plan.model));
  j["trips"] = Json::array();
  for (const auto& t : plan.trips) {
    j["trips"].push_back({{"route", t.route}, {"start", t.start}, {"end", t.end}});
  }
  j["assignments"] = Json::array();
  for (const auto& [id, rec] : plan.assignments) {
    Json a;
    a["order"] = id;
    a["trip"] = rec.trip;
    if (rec.option) {
      a["option"] = *rec.option;
    }
    if (rec.station) {
      a["station"] = *rec.station;
    }
    a["delivery_time"] = rec.delivery_time;
    j["assignments"].push_back(std::move(a));
  }
  j["unserved"] = plan.unserved;
  return j;
}

Json metrics_to_json(const MetricsReport& m) {
  Json j;
  j["distance"] = m.distance;
  j["trips"] = m.trips;
  j["served"] = m.served;
  j["service_rate"] = m.service_rate;
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  j["avg_wait"] = opt(m.avg_wait);
  j["max_wait"] = opt(m.max_wait);
  j["min_wait"] = opt(m.min_wait);
  j["wait_variability"] = opt(m.wait_variability);
  return j;
}

Json solve_report_to_json(const Instance& inst, const SolveReport& rep) {
  Json j;
  j["model"] = std::string(model_name(rep.model));
  j["objective"] = rep.objective;
  j["optimal"] = rep.optimal;
  j["nodes_explored"] = rep.nodes_explored;
  j["runtime_seconds"] = rep.runtime_seconds;
  j["bound_gap"] = rep.bound_gap;
  j["served"] = rep.served();
  Json plan = plan_to_json(rep.plan);
  if (is_slot_model(rep.model)) {
    // charged price equals the WTP of the chosen option
    for (auto& a : plan["assignments"]) {
      const auto& order =
          inst.orders[static_cast<std::size_t>(inst.order_index(a["order"].get<int>()))];
      a["price"] = (*order.wtp)[a["option"].get<std::size_t>()];
    }
  }
  j["plan"] = std::move(plan);
  if (rep.station_extras) {
    Json ex;
    ex["trips"] = Json::array();
    for (const auto& visits : rep.station_extras->trips) {
      Json t = Json::array();
      for (const auto& v : visits) {
        t.push_back({{"station", v.station}, {"arrival", v.arrival}});
      }
      ex["trips"].push_back(std::move(t));
    }
    ex["pickups"] = Json::array();
    for (const auto& [id, v] : rep.station_extras->pickups) {
      ex["pickups"].push_back({{"order", id}, {"station", v.station}, {"pickup_time", v.arrival}});
    }
    j["station_extras"] = std::move(ex);
  }
  if (rep.plan.trips.size() > 0 || rep.plan.assignments.size() > 0 || !inst.orders.empty()) {
    j["metrics"] = metrics_to_json(metrics_unchecked(inst, rep.plan));
  }
  return j;
}

Json sim_report_to_json(const SimReport& rep) {
  Json j;
  j["policies"] = rep.policies;
  j["replications"] = Json::array();
  for (const auto& r : rep.replications) {
    Json row;
    row["replication"] = r.replication;
    row["pi_bound"] = r.pi_bound;
    row["served"] = r.served;
    row["releases"] = r.scenario.release;
    j["replications"].push_back(std::move(row));
  }
  j["mean_served"] = rep.mean_served;
  j["mean_pi_bound"] = rep.mean_pi_bound;
  return j;
}

std::string sim_report_csv(const SimReport& rep) {
  std::ostringstream out;
  out << "replication,policy,served,pi_bound\n";
  for (const auto& r : rep.replications) {
    for (std::size_t p = 0; p < rep.policies.size(); ++p) {
      out << r.replication << ',' << rep.policies[p] << ',' << r.served[p] << ',' << r.pi_bound
          << '\n';
    }
  }
  return out.str();
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
}

Instance load_instance(const std::filesystem::path& path) {
  Instance inst;
  try {
    inst = instance_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return validate_instance(std::move(inst));
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  write_json_file(path, instance_to_json(inst));
}

Plan load_plan(const std::filesystem::path& path) {
  try {
    return plan_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace sdd
