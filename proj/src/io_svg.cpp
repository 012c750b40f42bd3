#include <algorithm>

#include <fmt/format.h>

#include "tsim/io.hpp"

namespace tsim {

namespace {

constexpr double kMargin = 40.0;

struct Frame {
  double x_min = 0.0;
  double x_max = 0.0;
  double t_max = 0.0;
  double scale = 1.0;

  double px(double x) const { return kMargin + (x - x_min) * scale; }
  double py(double t) const { return kMargin + (t_max - t) * scale; }
  double width() const { return 2.0 * kMargin + (x_max - x_min) * scale; }
  double height() const { return 2.0 * kMargin + t_max * scale; }
};

std::string num(double v) {
  std::string s = fmt::format("{:.3f}", v);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string line(const char* cls, const std::string& style, double x1, double y1, double x2, double y2) {
  return fmt::format("  <line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" style=\"{}\"/>\n", cls, num(x1),
                     num(y1), num(x2), num(y2), style);
}

const std::string& style_for(const DiagramStyle& s, State state) {
  switch (state) {
    case State::payload: return s.payload;
    case State::transfer_wait: return s.transfer_wait;
    case State::arbitration: return s.arbitration;
    case State::blocked: return s.blocked;
    case State::idle: return s.idle;
  }
  return s.idle;
}

const char* class_for(State state) {
  switch (state) {
    case State::payload: return "payload";
    case State::transfer_wait: return "transfer_wait";
    case State::arbitration: return "arbitration";
    case State::blocked: return "blocked";
    case State::idle: return "idle";
  }
  return "idle";
}

}  // namespace

std::string write_svg_diagram(const SimulationResult& result, const DiagramStyle& style) {
  Frame f;
  f.scale = style.scale > 0.0 ? style.scale : 40.0;
  f.t_max = std::max(result.makespan, 1.0);
  f.x_min = 0.0;
  f.x_max = 1.0;
  for (const auto& c : result.components) {
    f.x_min = std::min(f.x_min, c.position.x);
    f.x_max = std::max(f.x_max, c.position.x);
  }

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      num(f.width()), num(f.height()), num(f.width()), num(f.height()));
  out += "  <rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string axis = "stroke:#000000;stroke-width:1";
  out += line("axis", axis, f.px(f.x_min), f.py(0.0), f.px(f.x_max), f.py(0.0));
  out += line("axis", axis, f.px(0.0), f.py(0.0), f.px(0.0), f.py(f.t_max));
  out += fmt::format("  <text class=\"label\" x=\"{}\" y=\"{}\" font-size=\"10\">x</text>\n", num(f.px(f.x_max) + 4.0),
                     num(f.py(0.0) + 4.0));
  out += fmt::format("  <text class=\"label\" x=\"{}\" y=\"{}\" font-size=\"10\">t</text>\n", num(f.px(0.0) - 4.0),
                     num(f.py(f.t_max) - 6.0));

  for (const auto& c : result.components) {
    out += fmt::format("  <text class=\"component\" x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\">{}</text>\n",
                       num(f.px(c.position.x)), num(f.py(0.0) + 14.0), c.name);
  }

  for (const auto& t : result.trace) {
    const ComponentInfo* c = result.find(t.component);
    if (c == nullptr) continue;
    const double x = f.px(c->position.x);
    double y1 = f.py(t.start);
    double y2 = f.py(t.end);
    if (y1 - y2 < 2.0) {
      const double mid = 0.5 * (y1 + y2);
      y1 = mid + 1.0;
      y2 = mid - 1.0;
    }
    out += line(class_for(t.state), style_for(style, t.state), x, y1, x, y2);
  }

  for (const auto& t : result.transfers) {
    const ComponentInfo* a = result.find(t.source);
    const ComponentInfo* b = result.find(t.dest);
    if (a == nullptr || b == nullptr) continue;
    out += line("transfer", style.transfer, f.px(a->position.x), f.py(t.emit), f.px(b->position.x), f.py(t.arrival));
  }

  for (const auto& c : result.components) {
    if (!c.terminal) continue;
    const FiringRecord* last = nullptr;
    for (const auto& fr : result.firings) {
      if (fr.component == c.id && (last == nullptr || fr.end >= last->end)) last = &fr;
    }
    if (last == nullptr) continue;
    out += line("apparent", style.apparent, f.px(0.0), f.py(0.0), f.px(c.position.x), f.py(last->end));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tsim
