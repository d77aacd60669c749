#include "sdd/compare.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <future>
#include <sstream>

namespace sdd {

namespace {

constexpr std::array<ModelKind, 5> kRowOrder = {ModelKind::F1, ModelKind::F2, ModelKind::F2Lex,
                                                ModelKind::F3, ModelKind::F4};

CompareRow run_row(const Instance& inst, ModelKind model, const SolverConfig& cfg) {
  CompareRow row;
  row.model = model;
  try {
    const SolveReport rep = solve(inst, model, cfg);
    row.objective = rep.objective;
    row.optimal = rep.optimal;
    row.metrics = compute_metrics(inst, rep.plan);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::string opt6(const std::optional<double>& v) { return v ? fmt6(*v) : std::string("-"); }

const CompareRow* find(const std::vector<CompareRow>& rows, ModelKind m) {
  for (const auto& r : rows) {
    if (r.model == m && !r.error) {
      return &r;
    }
  }
  return nullptr;
}

}  // namespace

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<CompareRow> compare(const Instance& inst, const SolverConfig& cfg) {
  std::vector<std::future<CompareRow>> pending;
  for (const ModelKind m : kRowOrder) {
    pending.push_back(std::async(std::launch::async, run_row, std::cref(inst), m, std::cref(cfg)));
  }
  std::vector<CompareRow> rows;
  for (auto& f : pending) {
    rows.push_back(f.get());
  }
  return rows;
}

std::string format_table(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-6s %14s %6s %12s %5s %14s %14s %14s %14s\n", "model",
                "objective", "served", "service_rate", "trips", "distance", "avg_wait",
                "max_wait", "variability");
  out << line;
  for (const auto& r : rows) {
    if (r.error) {
      out << std::string(model_name(r.model)) << "  error: " << *r.error << '\n';
      continue;
    }
    const auto& m = r.metrics;
    std::snprintf(line, sizeof line, "%-6s %14s %6d %12s %5d %14s %14s %14s %14s%s\n",
                  std::string(model_name(r.model)).c_str(), fmt6(r.objective).c_str(), m.served,
                  fmt6(m.service_rate).c_str(), m.trips, fmt6(m.distance).c_str(),
                  opt6(m.avg_wait).c_str(), opt6(m.max_wait).c_str(),
                  opt6(m.wait_variability).c_str(), r.optimal ? "" : "  (not proven optimal)");
    out << line;
  }
  return out.str();
}

std::string rows_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << "model,objective,served,service_rate,trips,distance,avg_wait,max_wait,wait_variability,"
         "optimal,error\n";
  for (const auto& r : rows) {
    out << model_name(r.model) << ',';
    if (r.error) {
      std::string msg = *r.error;
      std::ranges::replace(msg, '"', '\'');
      out << ",,,,,,,,,\"" << msg << "\"\n";
      continue;
    }
    const auto& m = r.metrics;
    auto opt = [](const std::optional<double>& v) { return v ? fmt6(*v) : std::string(); };
    out << fmt6(r.objective) << ',' << m.served << ',' << fmt6(m.service_rate) << ',' << m.trips
        << ',' << fmt6(m.distance) << ',' << opt(m.avg_wait) << ',' << opt(m.max_wait) << ','
        << opt(m.wait_variability) << ',' << (r.optimal ? "true" : "false") << ",\n";
  }
  return out.str();
}

Json rows_json(const std::vector<CompareRow>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["model"] = std::string(model_name(r.model));
    if (r.error) {
      row["error"] = *r.error;
    } else {
      row["objective"] = r.objective;
      row["optimal"] = r.optimal;
      row["metrics"] = metrics_to_json(r.metrics);
    }
    j.push_back(std::move(row));
  }
  return j;
}

std::vector<std::string> pattern_summary(const std::vector<CompareRow>& rows) {
  std::vector<std::string> notes;
  const CompareRow* f1 = find(rows, ModelKind::F1);
  const CompareRow* f2 = find(rows, ModelKind::F2);
  const CompareRow* lex = find(rows, ModelKind::F2Lex);
  const CompareRow* f3 = find(rows, ModelKind::F3);
  const CompareRow* f4 = find(rows, ModelKind::F4);
  if (f1 && f2) {
    notes.push_back(std::string("F2 serves ") + std::to_string(f2->metrics.served) +
                    (f2->metrics.served <= f1->metrics.served ? " <= " : " > ") +
                    std::to_string(f1->metrics.served) + " served by F1");
    bool longest = true;
    for (const auto& r : rows) {
      if (!r.error && r.model != ModelKind::F2 && r.metrics.distance > f2->metrics.distance + kEps) {
        longest = false;
      }
    }
    notes.push_back(longest ? "F2 has the largest travel distance"
                            : "F2 does not have the largest travel distance");
  }
  if (f2 && lex) {
    notes.push_back("F2LEX serves " + std::to_string(lex->metrics.served) + " vs F2 " +
                    std::to_string(f2->metrics.served) + "; revenue " + fmt6(lex->objective) +
                    " vs " + fmt6(f2->objective));
  }
  if (f3 && f4) {
    notes.push_back("F4 service time " + fmt6(f4->objective) +
                    (f4->objective <= f3->objective + kEps ? " <= " : " > ") + "F3 " +
                    fmt6(f3->objective));
  }
  return notes;
}

}  // namespace sdd
