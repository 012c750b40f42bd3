#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "tsim/io.hpp"

namespace tsim {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string label(const SimulationResult& r, int id) {
  const ComponentInfo* c = r.find(id);
  return c != nullptr ? c->name : std::to_string(id);
}

}  // namespace

std::string write_trace_csv(const SimulationResult& result) {
  std::string out = "component,start,end,state,detail\n";
  std::vector<const TraceInterval*> rows;
  rows.reserve(result.trace.size());
  for (const auto& t : result.trace) rows.push_back(&t);
  std::stable_sort(rows.begin(), rows.end(), [](const TraceInterval* a, const TraceInterval* b) {
    if (a->component != b->component) return a->component < b->component;
    return a->start < b->start;
  });
  for (const TraceInterval* t : rows) {
    out += fmt::format("{},{},{},{},{}\n", csv_field(label(result, t->component)), format_fixed9(t->start),
                       format_fixed9(t->end), to_string(t->state), csv_field(t->detail));
  }
  for (const auto& t : result.transfers) {
    out += fmt::format("{}->{},{},{},transfer,{}\n", csv_field(label(result, t.source)),
                       csv_field(label(result, t.dest)), format_fixed9(t.emit), format_fixed9(t.arrival),
                       to_string(t.kind));
  }
  return out;
}

std::string write_surface_csv(std::span<const EfficiencyPoint> surface) {
  std::string out = "n,one_minus_alpha,efficiency\n";
  for (const auto& p : surface) {
    out += fmt::format("{},{},{}\n", format_fixed9(p.n), format_fixed9(1.0 - p.alpha), format_fixed9(p.e));
  }
  return out;
}

}  // namespace tsim
