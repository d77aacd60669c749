#include "sdd/generator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace sdd {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  // [0, 1) from the top 53 bits
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 rng_;
};

// rounding keeps the files short and the JSON round trip exact
double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace

Instance gen_instance(const GeneratorProfile& p) {
  if (p.orders < 0 || p.stations < 0) {
    throw std::invalid_argument("generator: counts must be nonnegative");
  }
  if (p.alpha < 0.0 || p.alpha > 1.0) {
    throw std::invalid_argument("generator: alpha must lie in [0, 1]");
  }
  if (!(p.side > 0.0) || !(p.horizon > 0.0)) {
    throw std::invalid_argument("generator: side and horizon must be positive");
  }
  if (p.wtp_lo < 0.0 || p.wtp_hi < p.wtp_lo) {
    throw std::invalid_argument("generator: bad WTP range");
  }
  if (p.capacity < 0) {
    throw std::invalid_argument("generator: capacity must be nonnegative");
  }

  Draw draw(p.seed);
  Instance inst;
  inst.horizon = p.horizon;
  inst.depot = {p.side / 2.0, p.side / 2.0};
  inst.radius = p.radius;
  inst.max_trips = p.max_trips;
  if (!p.deadlines.empty()) {
    inst.options = OptionSet{p.deadlines};
  }
  for (int i = 0; i < p.orders; ++i) {
    Order o;
    o.id = i + 1;
    o.loc = {round3(draw.uniform(0.0, p.side)), round3(draw.uniform(0.0, p.side))};
    o.release = round3(draw.uniform(0.0, p.alpha * p.horizon));
    if (!p.deadlines.empty()) {
      std::vector<double> wtp;
      for (std::size_t k = 0; k < p.deadlines.size(); ++k) {
        wtp.push_back(round3(draw.uniform(p.wtp_lo, p.wtp_hi)));
      }
      // longer deadlines are never worth more to the customer
      std::ranges::sort(wtp, std::greater<>());
      o.wtp = std::move(wtp);
    }
    inst.orders.push_back(std::move(o));
  }
  for (int s = 0; s < p.stations; ++s) {
    inst.stations.push_back(
        {s + 1, {round3(draw.uniform(0.0, p.side)), round3(draw.uniform(0.0, p.side))}, p.capacity});
  }
  return inst;
}

GeneratorProfile desk_profile(std::uint64_t seed) {
  GeneratorProfile p;
  p.orders = 8;
  p.stations = 3;
  p.radius = 30.0;
  p.deadlines = {60.0, 120.0, 240.0};
  p.capacity = 3;
  p.max_trips = 4;
  p.seed = seed;
  return p;
}

Instance radius_family(std::uint64_t seed, double radius) {
  Draw draw(seed);
  auto jitter = [&](Location l) {
    return Location{round3(l.x + draw.uniform(-1.0, 1.0)), round3(l.y + draw.uniform(-1.0, 1.0))};
  };
  Instance inst;
  inst.horizon = 250.0;
  inst.depot = {50.0, 50.0};
  inst.radius = radius;
  inst.stations = {{1, {50.0, 75.0}, 2}, {2, {20.0, 40.0}, 2}, {3, {95.0, 75.0}, 2}};
  // 1 and 2 only reach station 1; 3 and 4 reach station 3 once the radius
  // exceeds about 33; 5 sits next to station 2
  const Location base[] = {{40.0, 80.0}, {45.0, 85.0}, {63.0, 75.0}, {63.0, 80.0}, {25.0, 35.0}};
  for (int i = 0; i < 5; ++i) {
    Order o;
    o.id = i + 1;
    o.loc = jitter(base[i]);
    o.release = round3(draw.uniform(0.0, 20.0));
    inst.orders.push_back(std::move(o));
  }
  return inst;
}

Instance far_pair_family(std::uint64_t seed) {
  Draw draw(seed);
  Instance inst;
  inst.horizon = 250.0;
  inst.depot = {50.0, 50.0};
  inst.options = OptionSet{{60.0, 120.0, 240.0}};
  // The far pair fits in one trip from t=40 (length about 205) but not after
  // any trip to the near group, which cannot start before 30 and lies south
  // of the depot, away from the way north.
  inst.orders.push_back({1, {50.0, 150.0}, 40.0, std::vector<double>{100.0, 100.0, 100.0}, {}, {}});
  inst.orders.push_back({2, {55.0, 150.0}, 40.0, std::vector<double>{100.0, 100.0, 100.0}, {}, {}});
  const Location near[] = {{41.0, 45.0}, {50.0, 41.0}, {59.0, 45.0},
                           {44.0, 42.0}, {56.0, 42.0}, {50.0, 36.0}};
  for (int i = 0; i < 6; ++i) {
    const Location l{round3(near[i].x + draw.uniform(-0.5, 0.5)),
                     round3(near[i].y + draw.uniform(-0.5, 0.5))};
    const double w = round3(draw.uniform(5.0, 15.0));
    inst.orders.push_back({i + 3, l, 30.0, std::vector<double>{w, w, w}, {}, {}});
  }
  return inst;
}

Instance collinear_stations() {
  Instance inst;
  inst.horizon = 250.0;
  inst.depot = {0.0, 0.0};
  inst.stations = {{1, {10.0, 0.0}, 1}, {2, {20.0, 0.0}, 1}};
  inst.orders.push_back({1, {10.0, 0.0}, 0.0, {}, std::vector<int>{1}, {}});
  inst.orders.push_back({2, {20.0, 0.0}, 0.0, {}, std::vector<int>{2}, {}});
  return inst;
}

Instance all_at_depot(int orders, const std::vector<double>& deadlines, std::uint64_t seed) {
  Draw draw(seed);
  Instance inst;
  inst.horizon = 250.0;
  inst.depot = {50.0, 50.0};
  inst.options = OptionSet{deadlines};
  for (int i = 0; i < orders; ++i) {
    std::vector<double> wtp;
    for (std::size_t k = 0; k < deadlines.size(); ++k) {
      wtp.push_back(round3(draw.uniform(0.0, 100.0)));
    }
    std::ranges::sort(wtp, std::greater<>());
    inst.orders.push_back({i + 1, inst.depot, 0.0, std::move(wtp), {}, {}});
  }
  return inst;
}

Instance two_cluster(std::uint64_t seed) {
  Draw draw(seed);
  Instance inst;
  inst.horizon = 250.0;
  inst.depot = {50.0, 50.0};
  int id = 1;
  for (int i = 0; i < 4; ++i) {
    Order o;
    o.id = id++;
    o.loc = {round3(draw.uniform(40.0, 60.0)), round3(draw.uniform(55.0, 65.0))};
    const double hi = round3(draw.uniform(20.0, 60.0));
    o.release_dist = UniformRelease{0.0, hi};
    o.release = 0.0;
    inst.orders.push_back(std::move(o));
  }
  for (int i = 0; i < 3; ++i) {
    Order o;
    o.id = id++;
    o.loc = {round3(draw.uniform(85.0, 100.0)), round3(draw.uniform(0.0, 15.0))};
    const double early = round3(draw.uniform(60.0, 100.0));
    const double late = round3(draw.uniform(120.0, 170.0));
    o.release_dist = DiscreteRelease{{{early, 0.5}, {late, 0.5}}};
    o.release = early;
    inst.orders.push_back(std::move(o));
  }
  return inst;
}

}  // namespace sdd
