#pragma once

// Scenario documents (JSON), trace export (CSV) and temporal dependence
// diagrams (SVG). Every writer is deterministic byte for byte.

#include <span>
#include <string>
#include <string_view>

#include "tsim/analytic.hpp"
#include "tsim/model.hpp"

namespace tsim {

// Fixed 9-decimal rendering with round-half-even on the binary value; -0
// prints as 0.
std::string format_fixed9(double value);

// Parses and validates a scenario document. Throws ScenarioError whose
// code() tells syntax, schema, duplicate_id and dangling_reference apart.
Scenario parse_scenario(std::string_view document);

// Inverse of parse_scenario (2-space indented JSON, trailing newline).
std::string serialize_scenario(const Scenario& scenario);

// Header `component,start,end,state,detail`. Component rows sorted by
// (component id, start), then one `source->dest` row per transfer in
// delivery order.
std::string write_trace_csv(const SimulationResult& result);

// Columns n, one_minus_alpha, efficiency in the order given.
std::string write_surface_csv(std::span<const EfficiencyPoint> surface);

struct DiagramStyle {
  std::string payload = "stroke:#2e8b57;stroke-width:2";
  std::string transfer = "stroke:#2e8b57;stroke-width:1;stroke-dasharray:2,3";
  std::string idle = "stroke:#ff8c00;stroke-width:2";
  std::string blocked = "stroke:#ff8c00;stroke-width:2;stroke-dasharray:6,3";
  std::string arbitration = "stroke:#808080;stroke-width:2";
  std::string transfer_wait = "stroke:#1e6fd9;stroke-width:2";
  std::string apparent = "stroke:#d62728;stroke-width:1.5";
  double scale = 40.0;  // pixels per time unit on both axes
};

// x = component position.x, y = simulation time growing upward. One vertical
// line per interval (class = state name), a dotted slanted line per transfer
// and a red vector from the origin event to the last firing of every
// terminal component.
std::string write_svg_diagram(const SimulationResult& result, const DiagramStyle& style = {});

}  // namespace tsim
