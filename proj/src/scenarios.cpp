#include "tsim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "tsim/components.hpp"
#include "tsim/engine.hpp"
#include "tsim/error.hpp"

namespace tsim {

namespace {

ComponentSpec make(int id, std::string name, ComponentKind kind, TimePoint pos, double t_p = 0.0) {
  ComponentSpec c;
  c.id = id;
  c.name = std::move(name);
  c.kind = kind;
  c.position = pos;
  c.t_p = t_p;
  return c;
}

ComponentSpec gate(int id, std::string name, GateOp op, TimePoint pos, std::vector<int> inputs) {
  ComponentSpec c = make(id, std::move(name), ComponentKind::gate, pos, 1.0);
  c.op = op;
  c.inputs = std::move(inputs);
  return c;
}

void require_finite_nonneg(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(fmt::format("{} must be finite and >= 0", what));
}

const TransferRecord* first_arrival_at(const SimulationResult& r, int dest, int source = -1) {
  const TransferRecord* best = nullptr;
  for (const auto& t : r.transfers) {
    if (t.dest != dest || (t.kind != SignalKind::data && t.kind != SignalKind::result)) continue;
    if (source >= 0 && t.source != source) continue;
    if (best == nullptr || t.arrival < best->arrival) best = &t;
  }
  return best;
}

const FiringRecord* first_firing(const SimulationResult& r, int component) {
  for (const auto& f : r.firings) {
    if (f.component == component) return &f;
  }
  return nullptr;
}

const TransferRecord* transfer_by_signal(const SimulationResult& r, std::uint64_t signal) {
  for (const auto& t : r.transfers) {
    if (t.signal == signal) return &t;
  }
  return nullptr;
}

void observer_metrics(const Scenario& s, const SimulationResult& r, std::map<std::string, double>& m) {
  for (const auto& c : s.components) {
    if (c.kind != ComponentKind::processing_unit) continue;
    const FiringRecord* f = first_firing(r, c.id);
    if (f == nullptr || f->consumed.empty()) continue;
    const TransferRecord* in = transfer_by_signal(r, f->consumed.front());
    if (in == nullptr) continue;
    const double t_t = in->arrival - in->emit;
    m["light_on_" + c.name] = f->end;
    m["transfer_" + c.name] = t_t;
    // vector from the origin event to (t_t, light-on time)
    m["apparent_time_" + c.name] = std::hypot(t_t, f->end);
  }
}

void adder_metrics(const Scenario& s, const SimulationResult& r, std::map<std::string, double>& m) {
  for (const auto& c : s.components) {
    if (c.kind != ComponentKind::gate) continue;
    const FiringRecord* f = first_firing(r, c.id);
    if (f == nullptr) continue;
    m["output_valid_" + c.name] = f->end;
    m["idle_wait_" + c.name] = f->start;
  }
  for (const char* pin : {"sum", "cout"}) {
    const ComponentSpec* out = s.find(std::string(pin) + "_out");
    if (out == nullptr) continue;
    const TransferRecord* t = first_arrival_at(r, out->id);
    if (t == nullptr) continue;
    m[std::string(pin) + "_delivery"] = t->arrival;
    if (t->value) m[pin] = *t->value ? 1.0 : 0.0;
  }
}

// Per-sender arrival times at the collecting component, sorted by sender id.
std::vector<std::pair<const ComponentSpec*, double>> arrivals_from(const Scenario& s, const SimulationResult& r,
                                                                   int dest, ComponentKind sender_kind) {
  std::vector<std::pair<const ComponentSpec*, double>> out;
  for (const auto& c : s.components) {
    if (c.kind != sender_kind) continue;
    const TransferRecord* t = first_arrival_at(r, dest, c.id);
    if (t != nullptr) out.emplace_back(&c, t->arrival);
  }
  return out;
}

double skew_of(const std::vector<std::pair<const ComponentSpec*, double>>& arrivals) {
  if (arrivals.empty()) return 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [c, t] : arrivals) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

void bus_metrics(const Scenario& s, const SimulationResult& r, std::map<std::string, double>& m) {
  const ComponentSpec* dest = s.find("dest");
  const ComponentSpec* bus = s.find("bus");
  if (dest == nullptr || bus == nullptr) return;
  const auto arrivals = arrivals_from(s, r, dest->id, ComponentKind::source);
  for (const auto& [c, t] : arrivals) m["delivery_" + c->name] = t;
  m["skew"] = skew_of(arrivals);
  if (r.makespan > 0.0) {
    const auto& u = r.utilization.at(bus->id);
    const auto it = u.find(State::payload);
    m["bus_payload_fraction"] = (it == u.end() ? 0.0 : it->second) / r.makespan;
  }
}

void cache_metrics(const Scenario& s, const SimulationResult& r, std::map<std::string, double>& m) {
  for (const auto& c : s.components) {
    if (c.kind != ComponentKind::source) continue;
    for (const auto& t : r.transfers) {
      if (t.dest != c.id || t.kind != SignalKind::result) continue;
      // the request is the stimulus this core emitted
      for (const auto& req : r.transfers) {
        if (req.source == c.id && req.dest == t.source) {
          m["apparent_access_" + c.name] = t.arrival - req.emit;
          break;
        }
      }
      break;
    }
  }
}

void ann_metrics(const Scenario& s, const SimulationResult& r, std::map<std::string, double>& m) {
  const ComponentSpec* collector = s.find("collector");
  if (collector == nullptr) return;
  const auto arrivals = arrivals_from(s, r, collector->id, ComponentKind::neuron);
  if (arrivals.empty()) return;
  double last = 0.0;
  for (const auto& [c, t] : arrivals) {
    m["arrival_" + c->name] = t;
    last = std::max(last, t);
  }
  m["skew"] = skew_of(arrivals);
  const double period = arrivals.front().first->t_p;
  if (period > 0.0) m["stale_read_count"] = static_cast<double>(count_stale_reads(last, period));
}

}  // namespace

Scenario build_observer_chain(double t_p, double distance, std::span<const double> speed_factors) {
  if (speed_factors.empty()) throw DomainError("observer chain needs at least one speed factor");
  if (!(t_p > 0.0) || !std::isfinite(t_p)) throw DomainError("observer t_p must be > 0");
  require_finite_nonneg(distance, "distance");
  Scenario s;
  s.name = "observer";
  s.components.push_back(make(0, "source", ComponentKind::source, {0.0, 0.0}, t_p));
  for (std::size_t k = 0; k < speed_factors.size(); ++k) {
    const double speed = speed_factors[k];
    const SpeedFactor checked{speed};
    const int id = static_cast<int>(k) + 1;
    ComponentSpec obs = make(id, fmt::format("observer{}", k), ComponentKind::processing_unit, {distance, 0.0}, t_p);
    obs.inputs = {0};
    obs.params[std::string(param::link_speed)] = checked.value();
    s.components.push_back(obs);
    s.stimuli.push_back(SignalEvent{k, 0, id, 0.0, SignalKind::data, std::vector<bool>{true}});
    s.expected_metrics[fmt::format("apparent_time_observer{}", k)] = apparent_time(t_p, distance / speed).t_a;
  }
  return s;
}

Scenario build_one_bit_adder(TimePoint xor2_position, AdderInputs inputs) {
  if (!is_finite(xor2_position)) throw DomainError("xor2 position must be finite");
  Scenario s;
  s.name = "adder";
  s.components = {
      make(0, "a", ComponentKind::source, {-2.0, 0.0}),
      make(1, "b", ComponentKind::source, {-2.0, 1.0}),
      make(2, "cin", ComponentKind::source, {-2.0, -1.0}),
      // aXORb = a ^ b ; aANDb = a & b
      gate(3, "xor1", GateOp::XOR, {0.0, 0.0}, {0, 1}),
      gate(4, "and1", GateOp::AND, {0.0, 1.0}, {0, 1}),
      // sum = aXORb ^ cin ; cinANDaXORb = cin & aXORb
      gate(5, "xor2", GateOp::XOR, xor2_position, {3, 2}),
      gate(6, "and2", GateOp::AND, {1.0, 1.0}, {2, 3}),
      // cout = aANDb | cinANDaXORb
      gate(7, "or", GateOp::OR, {2.0, 1.0}, {4, 6}),
      make(8, "sum_out", ComponentKind::sink, {3.0, 0.0}),
      make(9, "cout_out", ComponentKind::sink, {3.0, 1.0}),
  };
  s.components[8].inputs = {5};
  s.components[9].inputs = {7};
  auto bits = [](bool v) { return std::optional<std::vector<bool>>(std::vector<bool>{v}); };
  s.stimuli = {
      SignalEvent{0, 0, 3, 0.0, SignalKind::data, bits(inputs.a)},
      SignalEvent{1, 0, 4, 0.0, SignalKind::data, bits(inputs.a)},
      SignalEvent{2, 1, 3, 0.0, SignalKind::data, bits(inputs.b)},
      SignalEvent{3, 1, 4, 0.0, SignalKind::data, bits(inputs.b)},
      SignalEvent{4, 2, 5, 0.0, SignalKind::data, bits(inputs.cin)},
      SignalEvent{5, 2, 6, 0.0, SignalKind::data, bits(inputs.cin)},
  };
  return s;
}

Scenario build_bus_scenario(std::size_t n_senders, double t_msg, double spacing) {
  if (n_senders == 0) throw DomainError("bus scenario needs at least one sender");
  require_finite_nonneg(t_msg, "t_msg");
  require_finite_nonneg(spacing, "spacing");
  Scenario s;
  s.name = "bus";
  s.components.push_back(make(0, "bus", ComponentKind::bus_arbiter, {0.0, 0.0}));
  s.components.push_back(make(1, "dest", ComponentKind::sink, {0.0, 0.0}));
  for (std::size_t k = 1; k <= n_senders; ++k) {
    const int id = static_cast<int>(k) + 1;
    ComponentSpec c = make(id, fmt::format("sender{}", k), ComponentKind::source,
                           {spacing * static_cast<double>(k), 0.0});
    c.params[std::string(param::bus)] = 0;
    c.params[std::string(param::t_msg)] = t_msg;
    s.components.push_back(c);
    s.stimuli.push_back(SignalEvent{k - 1, id, 1, 0.0, SignalKind::data, std::nullopt});
  }
  return s;
}

Scenario build_distributed_scenario(std::size_t n_workers, double t_dispatch, double t_work, double t_recv,
                                    double spacing) {
  if (n_workers == 0) throw DomainError("distributed scenario needs at least one worker");
  require_finite_nonneg(spacing, "spacing");
  const ComponentSpec coord = make(0, "coordinator", ComponentKind::coordinator, {0.0, 0.0});
  std::vector<ComponentSpec> workers;
  for (std::size_t k = 1; k <= n_workers; ++k) {
    workers.push_back(make(static_cast<int>(k), fmt::format("worker{}", k), ComponentKind::worker,
                           {spacing * static_cast<double>(k), 0.0}));
  }
  return make_dispatch_scenario(coord, workers, t_dispatch, t_work, t_recv);
}

Scenario build_cache_scenario(double cache_y, double cache_t_p) {
  if (!(cache_y > 0.0) || !std::isfinite(cache_y)) throw DomainError("cache_y must be > 0");
  require_finite_nonneg(cache_t_p, "cache t_p");
  Scenario s;
  s.name = "cache";
  s.components = {
      make(0, "core0", ComponentKind::source, {-0.5, 0.0}),
      make(1, "core1", ComponentKind::source, {0.5, 0.0}),
      make(2, "cache", ComponentKind::cache, {0.0, cache_y}, cache_t_p),
  };
  s.stimuli = {
      SignalEvent{0, 0, 2, 0.0, SignalKind::request, std::nullopt},
      SignalEvent{1, 1, 2, 0.0, SignalKind::request, std::nullopt},
  };
  return s;
}

Scenario build_ann_layer_scenario(std::size_t n_neurons, double t_p, double t_msg, bool dedicated_links) {
  if (n_neurons == 0) throw DomainError("ANN layer needs at least one neuron");
  require_finite_nonneg(t_p, "t_p");
  require_finite_nonneg(t_msg, "t_msg");
  Scenario s;
  s.name = "ann";
  s.components.push_back(make(0, "collector", ComponentKind::sink, {0.0, 0.0}));
  if (!dedicated_links) s.components.push_back(make(1, "bus", ComponentKind::bus_arbiter, {0.0, 0.0}));
  const int first = dedicated_links ? 1 : 2;
  for (std::size_t k = 1; k <= n_neurons; ++k) {
    const int id = first + static_cast<int>(k) - 1;
    ComponentSpec c = make(id, fmt::format("neuron{}", k), ComponentKind::neuron, {static_cast<double>(k), 0.0}, t_p);
    c.params[std::string(param::t_msg)] = t_msg;
    if (!dedicated_links) c.params[std::string(param::bus)] = 1;
    s.components.push_back(c);
    s.stimuli.push_back(SignalEvent{k - 1, id, 0, 0.0, SignalKind::data, std::vector<bool>{true}});
  }
  return s;
}

Scenario build_default(std::string_view name) {
  if (name == "observer") {
    const std::array<double, 3> speeds{0.5, 1.0, 2.0};
    return build_observer_chain(1.0, 1.0, speeds);
  }
  if (name == "adder") return build_one_bit_adder({1.0, 0.0});
  if (name == "bus") return build_bus_scenario(2, 0.1, 1.0);
  if (name == "distributed") return build_distributed_scenario(2, 0.1, 1.0, 0.1, 1.0);
  if (name == "cache") return build_cache_scenario(0.5, 1.0);
  if (name == "ann") return build_ann_layer_scenario(3, 1.0, 0.1, false);
  throw DomainError("unknown scenario '" + std::string(name) + "'");
}

std::size_t count_stale_reads(double last_arrival, double period) {
  if (!(period > 0.0)) throw DomainError("polling period must be > 0");
  std::size_t n = 0;
  for (std::size_t m = 1; static_cast<double>(m) * period < last_arrival; ++m) ++n;
  return n;
}

std::map<std::string, double> scenario_metrics(const Scenario& scenario, const SimulationResult& result) {
  std::map<std::string, double> m;
  const std::string& n = scenario.name;
  if (n == "observer") {
    observer_metrics(scenario, result, m);
  } else if (n == "adder") {
    adder_metrics(scenario, result, m);
  } else if (n == "bus") {
    bus_metrics(scenario, result, m);
  } else if (n == "distributed") {
    SimulationResult copy = result;
    copy.metrics.clear();
    add_dispatch_metrics(scenario, copy);
    m = copy.metrics;
  } else if (n == "cache") {
    cache_metrics(scenario, result, m);
  } else if (n == "ann") {
    ann_metrics(scenario, result, m);
  }
  return m;
}

SimulationResult simulate(const Scenario& scenario) {
  SimulationResult result = run(scenario);
  for (auto& [k, v] : scenario_metrics(scenario, result)) result.metrics[k] = v;
  return result;
}

}  // namespace tsim
