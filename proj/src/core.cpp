#include "sdd/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sdd/geometry.hpp"

namespace sdd {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::ostringstream os;
  os << "invalid instance:";
  for (const auto& item : items) {
    os << "\n  - " << item;
  }
  return os.str();
}

bool finite(const Location& l) { return std::isfinite(l.x) && std::isfinite(l.y); }

}  // namespace

InstanceError::InstanceError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

int Instance::station_index(int id) const {
  for (std::size_t i = 0; i < stations.size(); ++i) {
    if (stations[i].id == id) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

int Instance::order_index(int id) const {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i].id == id) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

int Instance::trip_bound() const {
  return max_trips.value_or(std::max<int>(1, static_cast<int>(orders.size())));
}

bool Instance::supports_slots() const {
  if (!options || options->deadlines.empty()) {
    return false;
  }
  return std::ranges::all_of(orders, [&](const Order& o) {
    return o.wtp && o.wtp->size() == options->deadlines.size();
  });
}

bool Instance::supports_stations() const {
  return std::ranges::all_of(orders,
                             [](const Order& o) { return o.feasible_stations.has_value(); });
}

std::vector<std::string> release_dist_violations(const ReleaseDist& dist) {
  std::vector<std::string> out;
  if (const auto* p = std::get_if<PointRelease>(&dist)) {
    if (!(p->t >= 0.0) || !std::isfinite(p->t)) {
      out.emplace_back("point release must be finite and >= 0");
    }
  } else if (const auto* u = std::get_if<UniformRelease>(&dist)) {
    if (!(u->lo >= 0.0 && u->lo <= u->hi) || !std::isfinite(u->hi)) {
      out.emplace_back("uniform release needs 0 <= lo <= hi");
    }
  } else {
    const auto& d = std::get<DiscreteRelease>(dist);
    if (d.points.empty()) {
      out.emplace_back("discrete release needs at least one point");
    }
    double total = 0.0;
    for (const auto& [t, p] : d.points) {
      if (!(t >= 0.0) || !std::isfinite(t)) {
        out.emplace_back("discrete release time must be finite and >= 0");
      }
      if (!(p > 0.0)) {
        out.emplace_back("discrete release probability must be > 0");
      }
      total += p;
    }
    if (!d.points.empty() && std::abs(total - 1.0) > 1e-9) {
      out.emplace_back("discrete release probabilities must sum to 1");
    }
  }
  return out;
}

std::vector<std::string> instance_violations(const Instance& inst) {
  std::vector<std::string> out;
  auto add = [&](std::string msg) { out.push_back(std::move(msg)); };

  if (!(inst.horizon > 0.0) || !std::isfinite(inst.horizon)) {
    add("horizon must be positive");
  }
  if (!finite(inst.depot)) {
    add("depot has non-finite coordinates");
  }
  if (inst.radius && !(*inst.radius >= 0.0)) {
    add("radius must be >= 0");
  }
  if (inst.big_m && !std::isfinite(*inst.big_m)) {
    add("big_m must be finite");
  }
  if (inst.max_trips && *inst.max_trips < 1) {
    add("max_trips must be >= 1");
  }
  if (inst.options) {
    const auto& dl = inst.options->deadlines;
    if (dl.empty()) {
      add("options must list at least one deadline");
    }
    for (std::size_t i = 0; i < dl.size(); ++i) {
      if (!(dl[i] > 0.0)) {
        add("option deadlines must be positive");
      }
      if (i > 0 && !(dl[i] > dl[i - 1])) {
        add("option deadlines must be strictly increasing");
      }
    }
  }

  std::set<int> station_ids;
  for (const auto& s : inst.stations) {
    if (s.id <= 0) {
      add("station id " + std::to_string(s.id) + " must be positive");
    }
    if (!station_ids.insert(s.id).second) {
      add("duplicate station id " + std::to_string(s.id));
    }
    if (s.capacity < 0) {
      add("station " + std::to_string(s.id) + " has negative capacity");
    }
    if (!finite(s.loc)) {
      add("station " + std::to_string(s.id) + " has non-finite coordinates");
    }
  }

  std::set<int> order_ids;
  for (const auto& o : inst.orders) {
    const std::string tag = "order " + std::to_string(o.id);
    if (o.id <= 0) {
      add(tag + ": id must be positive");
    }
    if (!order_ids.insert(o.id).second) {
      add("duplicate order id " + std::to_string(o.id));
    }
    if (!finite(o.loc)) {
      add(tag + ": non-finite coordinates");
    }
    if (!std::isfinite(o.release)) {
      add(tag + ": non-finite release");
    } else if (o.release < 0.0) {
      add(tag + ": negative release");
    }
    if (o.wtp) {
      if (o.wtp->size() != inst.num_options()) {
        add(tag + ": wtp length " + std::to_string(o.wtp->size()) + " does not match " +
            std::to_string(inst.num_options()) + " options");
      }
      if (std::ranges::any_of(*o.wtp, [](double v) { return !(v >= 0.0) || !std::isfinite(v); })) {
        add(tag + ": wtp values must be finite and >= 0");
      }
    }
    if (o.feasible_stations) {
      std::set<int> seen;
      for (int sid : *o.feasible_stations) {
        if (!station_ids.contains(sid)) {
          add(tag + ": unknown station " + std::to_string(sid));
        }
        if (!seen.insert(sid).second) {
          add(tag + ": station " + std::to_string(sid) + " listed twice");
        }
      }
    }
    if (o.release_dist) {
      for (auto& v : release_dist_violations(*o.release_dist)) {
        add(tag + ": " + v);
      }
    }
  }
  return out;
}

Instance validate_instance(Instance inst) {
  auto violations = instance_violations(inst);
  if (!violations.empty()) {
    throw InstanceError(std::move(violations));
  }
  std::ranges::sort(inst.orders, {}, &Order::id);
  std::ranges::sort(inst.stations, {}, &Station::id);
  for (auto& o : inst.orders) {
    if (o.feasible_stations) {
      std::ranges::sort(*o.feasible_stations);
    } else if (inst.radius) {
      o.feasible_stations = feasible_stations(o, inst.stations, *inst.radius);
    }
  }
  if (!inst.big_m) {
    inst.big_m = inst.horizon;
  }
  if (!inst.max_trips) {
    inst.max_trips = std::max<int>(1, static_cast<int>(inst.orders.size()));
  }
  return inst;
}

}  // namespace sdd
