#pragma once

// Independent re-derivations of the case-study timings. Nothing here calls
// into the library: each function walks the event sequence by hand with
// plain arithmetic so the engine can be checked against it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tsim/model.hpp"

namespace oracle {

inline double ta(double t_p, double t_t) { return std::sqrt(t_t * t_t + (2.0 * t_p + t_t) * (2.0 * t_p + t_t)); }

inline double dist(double ax, double ay, double bx, double by) { return std::sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by)); }

struct AdderTimes {
  std::map<std::string, double> valid;  // gate -> output valid time
  double sum_delivery = 0.0;
  double cout_delivery = 0.0;
  bool sum = false;
  bool cout = false;
};

// Longest-path evaluation of the canonical layout with unit gate delay.
inline AdderTimes adder(double xor2_x, double xor2_y, bool a, bool b, bool cin) {
  struct P { double x, y; };
  const P pa{-2, 0}, pb{-2, 1}, pc{-2, -1}, x1{0, 0}, a1{0, 1}, x2{xor2_x, xor2_y}, a2{1, 1}, o{2, 1}, so{3, 0}, co{3, 1};
  auto d = [](P p, P q) { return dist(p.x, p.y, q.x, q.y); };
  AdderTimes t;
  const double v_x1 = std::max(d(pa, x1), d(pb, x1)) + 1.0;
  const double v_a1 = std::max(d(pa, a1), d(pb, a1)) + 1.0;
  const double v_x2 = std::max(v_x1 + d(x1, x2), d(pc, x2)) + 1.0;
  const double v_a2 = std::max(v_x1 + d(x1, a2), d(pc, a2)) + 1.0;
  const double v_o = std::max(v_a1 + d(a1, o), v_a2 + d(a2, o)) + 1.0;
  t.valid = {{"xor1", v_x1}, {"and1", v_a1}, {"xor2", v_x2}, {"and2", v_a2}, {"or", v_o}};
  t.sum_delivery = v_x2 + d(x2, so);
  t.cout_delivery = v_o + d(o, co);
  const int total = int(a) + int(b) + int(cin);
  t.sum = (total % 2) == 1;
  t.cout = total >= 2;
  return t;
}

// FIFO shared bus: request travels sender->arbiter, grant travels back, the
// message occupies t_msg and then propagates to a destination at the
// arbiter. Senders sit at distance k*spacing and request at `ready`.
inline std::vector<double> bus_deliveries(std::size_t n, double t_msg, double spacing, double ready = 0.0) {
  std::vector<std::pair<double, double>> req;  // (arrival at arbiter, leg)
  for (std::size_t k = 1; k <= n; ++k) {
    const double leg = spacing * double(k);
    req.emplace_back(ready + leg, leg);
  }
  std::vector<double> out;
  double free_at = 0.0;
  for (const auto& [arrival, leg] : req) {
    const double issued = std::max(arrival, free_at);
    const double delivery = issued + leg + t_msg + leg;
    free_at = delivery;
    out.push_back(delivery);
  }
  return out;
}

inline double bus_payload_fraction(std::size_t n, double t_msg, double spacing) {
  const auto d = bus_deliveries(n, t_msg, spacing);
  return double(n) * t_msg / d.back();
}

inline std::vector<double> ann_arrivals(std::size_t n, double t_p, double t_msg, bool dedicated) {
  if (!dedicated) return bus_deliveries(n, t_msg, 1.0, t_p);
  std::vector<double> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(t_p + t_msg + double(k));
  return out;
}

inline std::size_t stale_reads(double last, double period) {
  std::size_t c = 0;
  for (double m = 1.0; m * period < last; m += 1.0) ++c;
  return c;
}

struct Dispatch {
  double makespan = 0.0;
  double coordinator_idle = 0.0;
  double efficiency = 0.0;
};

// Coordinator serialises dispatches (t_d each), workers at k*spacing run t_w,
// results come back and are received one at a time (t_r each).
inline Dispatch dispatch(std::size_t n, double t_d, double t_w, double t_r, double spacing) {
  std::vector<double> back;
  for (std::size_t k = 1; k <= n; ++k) {
    const double leg = spacing * double(k);
    back.push_back(double(k) * t_d + leg + t_w + leg);
  }
  std::sort(back.begin(), back.end());
  double t = double(n) * t_d;
  for (double a : back) t = std::max(t, a) + t_r;
  Dispatch d;
  d.makespan = t;
  d.coordinator_idle = t - double(n) * (t_d + t_r);
  d.efficiency = double(n) * t_w / (double(n + 1) * t);
  return d;
}

// Two cores at (+-0.5, 0) hit a cache at (0, y) at t=0; core0 wins the tie.
inline std::pair<double, double> cache_access(double y, double t_p) {
  const double leg = dist(-0.5, 0.0, 0.0, y);
  const double first = leg + t_p + leg;
  const double second = std::max(leg, leg + t_p) + t_p + leg;
  return {first, second};
}

// Every component's intervals, in order, cover [0, makespan] with no gap or
// overlap. Returns an empty string on success, otherwise a description.
inline std::string tiling_violation(const tsim::SimulationResult& r) {
  std::map<int, std::vector<const tsim::TraceInterval*>> per;
  for (const auto& c : r.components) per[c.id];
  for (const auto& t : r.trace) per[t.component].push_back(&t);
  for (auto& [id, ivs] : per) {
    std::stable_sort(ivs.begin(), ivs.end(), [](auto* a, auto* b) { return a->start < b->start; });
    double cursor = 0.0;
    for (const auto* iv : ivs) {
      if (iv->start != cursor) return "component " + std::to_string(id) + " gap/overlap at " + std::to_string(cursor);
      if (iv->end < iv->start) return "component " + std::to_string(id) + " negative interval";
      cursor = iv->end;
    }
    if (cursor != r.makespan) return "component " + std::to_string(id) + " ends at " + std::to_string(cursor);
  }
  return {};
}

}  // namespace oracle
