#include "tsim/components.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "tsim/engine.hpp"
#include "tsim/error.hpp"

namespace tsim {

bool gate_evaluate(GateOp op, std::span<const bool> inputs) {
  if (inputs.size() != gate_arity(op)) {
    throw ArityError(fmt::format("{} takes {} input(s), got {}", to_string(op), gate_arity(op), inputs.size()));
  }
  switch (op) {
    case GateOp::AND: return inputs[0] && inputs[1];
    case GateOp::OR: return inputs[0] || inputs[1];
    case GateOp::XOR: return inputs[0] != inputs[1];
    case GateOp::NOT: return !inputs[0];
  }
  return false;
}

GateSettlement gate_settle(const ComponentSpec& gate, std::span<const InputArrival> input_arrivals) {
  if (gate.kind != ComponentKind::gate || !gate.op) {
    throw DomainError("gate_settle requires a gate with an op");
  }
  const std::size_t arity = gate_arity(*gate.op);
  if (input_arrivals.size() < arity) {
    throw ArityError(fmt::format("gate '{}' is missing {} input(s)", gate.name, arity - input_arrivals.size()));
  }
  if (input_arrivals.size() > arity) {
    throw ArityError(fmt::format("gate '{}' takes {} input(s), got {}", gate.name, arity, input_arrivals.size()));
  }
  std::array<bool, 2> values{};
  double last = 0.0;
  for (std::size_t i = 0; i < arity; ++i) {
    values[i] = input_arrivals[i].value;
    last = std::max(last, input_arrivals[i].time);
  }
  return GateSettlement{last + gate.t_p, gate_evaluate(*gate.op, std::span<const bool>(values.data(), arity))};
}

std::optional<bool> read_output(const SimulationResult& result, int component, double time) {
  if (result.find(component) == nullptr) {
    throw std::out_of_range(fmt::format("component {} is not part of the result", component));
  }
  std::optional<bool> value;
  double latest = -1.0;
  for (const auto& f : result.firings) {
    if (f.component == component && f.end <= time && f.end >= latest) {
      latest = f.end;
      value = f.value;
    }
  }
  return value;
}

// --- shared bus ---------------------------------------------------------------

SharedBus::SharedBus(TimePoint arbiter_position, SpeedFactor speed) : position_(arbiter_position), speed_(speed) {}

void SharedBus::enqueue(const BusRequest& request) {
  auto before = [](const BusRequest& a, const BusRequest& b) {
    if (a.arrival != b.arrival) return a.arrival < b.arrival;
    if (a.sender != b.sender) return a.sender < b.sender;
    return a.id < b.id;
  };
  pending_.insert(std::upper_bound(pending_.begin(), pending_.end(), request, before), request);
  state_.queue.clear();
  for (const auto& r : pending_) state_.queue.push_back(r.id);
}

std::optional<BusGrant> SharedBus::grant(double now) {
  if (pending_.empty() || !idle_at(now)) return std::nullopt;
  BusGrant g;
  g.request = pending_.front();
  pending_.erase(pending_.begin());
  state_.queue.pop_front();
  g.issued = std::max(now, g.request.arrival);
  g.grant_arrival = g.issued + g.request.grant_leg;
  g.departure = g.grant_arrival + g.request.t_msg;
  g.delivery = g.departure + g.request.message_leg;
  state_.busy_until = g.delivery;
  ++state_.grants_issued;
  return g;
}

double bus_transfer(SharedBus& bus, const SignalEvent& request, TimePoint sender_pos, TimePoint dest_pos,
                    double t_msg) {
  if (!(t_msg >= 0.0)) throw DomainError("t_msg must be >= 0");
  BusRequest r;
  r.id = request.id;
  r.sender = request.source;
  r.dest = request.dest;
  r.arrival = request.emit_time + transfer_time(sender_pos, bus.position(), bus.speed());
  r.grant_leg = transfer_time(bus.position(), sender_pos, bus.speed());
  r.t_msg = t_msg;
  r.message_leg = transfer_time(sender_pos, dest_pos, bus.speed());
  bus.enqueue(r);
  for (;;) {
    const double when = std::max(bus.state().busy_until, r.arrival);
    const auto g = bus.grant(when);
    if (!g) throw SimulationError("bus_transfer: request was not granted");
    if (g->request.id == r.id) return g->delivery;
  }
}

// --- cache ------------------------------------------------------------------

CacheServer::CacheServer(const ComponentSpec& cache, SpeedFactor speed)
    : position_(cache.position), t_p_(cache.t_p), speed_(speed) {
  if (!(t_p_ >= 0.0)) throw DomainError("cache t_p must be >= 0");
}

double CacheServer::access(const ComponentSpec& core, double request_time) {
  const double leg = transfer_time(core.position, position_, speed_);
  const double start = std::max(request_time + leg, busy_until_);
  busy_until_ = start + t_p_;
  return busy_until_ + leg;
}

double cache_access(const ComponentSpec& core, const ComponentSpec& cache, double request_time, SpeedFactor speed) {
  CacheServer server(cache, speed);
  return server.access(core, request_time);
}

// --- coordinator / workers ------------------------------------------------------

Scenario make_dispatch_scenario(const ComponentSpec& coordinator, std::span<const ComponentSpec> workers,
                                double t_dispatch, double t_work, double t_recv) {
  if (workers.empty()) throw DomainError("dispatch_and_collect needs at least one worker");
  if (!(t_dispatch >= 0.0) || !(t_work >= 0.0) || !(t_recv >= 0.0)) {
    throw DomainError("dispatch, work and receive times must be >= 0");
  }
  Scenario s;
  s.name = "distributed";
  ComponentSpec coord = coordinator;
  coord.kind = ComponentKind::coordinator;
  coord.t_p = 0.0;
  coord.params[std::string(param::t_msg)] = t_dispatch;
  coord.params[std::string(param::t_recv)] = t_recv;
  coord.inputs.clear();
  for (const auto& w : workers) coord.inputs.push_back(w.id);
  s.components.push_back(coord);
  std::uint64_t next = 0;
  for (const auto& w : workers) {
    ComponentSpec spec = w;
    spec.kind = ComponentKind::worker;
    spec.t_p = t_work;
    spec.inputs = {coord.id};
    s.components.push_back(spec);
    s.stimuli.push_back(SignalEvent{next++, coord.id, w.id, 0.0, SignalKind::data, std::nullopt});
  }
  return s;
}

void add_dispatch_metrics(const Scenario& scenario, SimulationResult& result) {
  const ComponentSpec* coord = nullptr;
  double worker_payload = 0.0;
  std::size_t workers = 0;
  for (const auto& c : scenario.components) {
    if (c.kind == ComponentKind::coordinator && coord == nullptr) coord = &c;
    if (c.kind == ComponentKind::worker) {
      ++workers;
      const auto& u = result.utilization.at(c.id);
      if (auto it = u.find(State::payload); it != u.end()) worker_payload += it->second;
    }
  }
  if (coord == nullptr || workers == 0) return;
  const auto& cu = result.utilization.at(coord->id);
  auto get = [&](State s) {
    const auto it = cu.find(s);
    return it == cu.end() ? 0.0 : it->second;
  };
  result.metrics["coordinator_idle"] = get(State::idle);
  result.metrics["coordinator_blocked"] = get(State::blocked);
  if (result.makespan > 0.0) {
    result.metrics["efficiency"] =
        worker_payload / (static_cast<double>(workers + 1) * result.makespan);
  }
}

SimulationResult dispatch_and_collect(const ComponentSpec& coordinator, std::span<const ComponentSpec> workers,
                                      double t_dispatch, double t_work, double t_recv) {
  const Scenario s = make_dispatch_scenario(coordinator, workers, t_dispatch, t_work, t_recv);
  SimulationResult result = run(s);
  add_dispatch_metrics(s, result);
  return result;
}

}  // namespace tsim
