#include "tsim/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "tsim/components.hpp"
#include "tsim/error.hpp"

namespace tsim {

namespace {

enum class EventType {
  stimulus,         // a stimulus triggers its source component
  arrival,          // a data/result signal reaches its destination
  wakeup,           // component re-examines its queues
  work_done,        // current activity of a component ends
  request_arrival,  // bus request reaches the arbiter
  arbitrate,        // arbiter decides on the next grant
  grant_arrival,    // grant reaches the requesting sender
  bus_free,         // delivered message releases the bus
};

struct Event {
  double time = 0.0;
  std::uint64_t id = 0;
  EventType type = EventType::wakeup;
  std::size_t target = 0;  // runtime index
  std::size_t slot = 0;    // index into the side table of the event type
};

struct Later {
  bool operator()(const Event& a, const Event& b) const noexcept {
    if (a.time != b.time) return a.time > b.time;
    return a.id > b.id;
  }
};

struct Input {
  double arrival = 0.0;
  int sender = 0;
  std::uint64_t signal = 0;
  std::optional<bool> value;

  bool operator<(const Input& o) const noexcept {
    if (arrival != o.arrival) return arrival < o.arrival;
    if (sender != o.sender) return sender < o.sender;
    return signal < o.signal;
  }
};

struct Outgoing {
  std::optional<std::uint64_t> signal;  // preassigned for stimuli
  SignalKind kind = SignalKind::data;
  int dest = 0;
  std::optional<bool> value;
};

struct Message {
  std::uint64_t signal = 0;
  SignalKind kind = SignalKind::data;
  int source = 0;
  int dest = 0;
  double emit = 0.0;
  std::optional<bool> value;
};

struct StimulusJob {
  double trigger = 0.0;
  std::vector<Outgoing> sends;
};

struct Activity {
  double start = 0.0;
  double end = 0.0;
  State state = State::payload;
  std::string detail;
};

struct Completion {
  std::vector<Outgoing> release;   // queued for sending once the activity ends
  std::optional<Outgoing> depart;  // direct send whose serialization just ended
};

struct Runtime {
  const ComponentSpec* spec = nullptr;
  bool busy = false;
  bool wakeup_pending = false;
  std::vector<std::deque<Input>> ports;
  std::deque<StimulusJob> stimulus_jobs;
  std::deque<Outgoing> sends;
  Completion completion;

  std::size_t pending = 0;
  double pending_since = 0.0;
  std::vector<std::pair<double, double>> pending_spans;
  std::vector<Activity> activities;

  std::vector<int> fanout;
  double t_msg = 0.0;
  double t_recv = 0.0;
  double link_speed = 1.0;
  std::optional<std::size_t> via_bus;  // runtime index of the arbiter

  // bus sender bookkeeping
  double request_started = 0.0;
  Outgoing in_flight;

  // bus arbiter
  std::unique_ptr<SharedBus> bus;
  bool arbitrate_pending = false;
};

bool emits_on_fire(ComponentKind kind) noexcept {
  switch (kind) {
    case ComponentKind::gate:
    case ComponentKind::processing_unit:
    case ComponentKind::neuron:
    case ComponentKind::worker:
    case ComponentKind::cache:
      return true;
    default:
      return false;
  }
}

std::optional<bool> first_bit(const std::optional<std::vector<bool>>& bits) {
  if (!bits || bits->empty()) return std::nullopt;
  return bits->front();
}

}  // namespace

class Simulator::Impl {
 public:
  Impl(Scenario scenario, EngineOptions options) : scenario_(std::move(scenario)), options_(options) {
    validate(scenario_);
    build_runtimes();
    check_zero_delay_cycles();
    for (const auto& s : scenario_.stimuli) {
      next_id_ = std::max(next_id_, s.id + 1);
    }
    internal_base_ = next_id_;
    for (const auto& s : scenario_.stimuli) {
      user_ids_.insert(s.id);
      push_stimulus(s);
    }
  }

  double now() const noexcept { return now_; }

  void schedule(const SignalEvent& event) {
    if (finished_) throw SchedulingError("simulation already finished");
    if (!(event.emit_time >= now_) || !std::isfinite(event.emit_time)) {
      throw SchedulingError(fmt::format("cannot schedule event {} at t={} (now {})", event.id, event.emit_time, now_));
    }
    if (user_ids_.count(event.id) != 0 || (event.id >= internal_base_ && event.id < next_id_)) {
      throw SchedulingError(fmt::format("event id {} already used", event.id));
    }
    Scenario probe;
    probe.name = "probe";
    probe.components = scenario_.components;
    probe.stimuli = {event};
    try {
      validate(probe);
    } catch (const ScenarioError& e) {
      throw SchedulingError(std::string("invalid event: ") + e.what());
    }
    user_ids_.insert(event.id);
    next_id_ = std::max(next_id_, event.id + 1);
    push_stimulus(event);
  }

  void run_until(double t) {
    while (!queue_.empty() && queue_.top().time <= t) step();
    if (t > now_ && std::isfinite(t)) now_ = t;
  }

  SimulationResult finish() {
    while (!queue_.empty()) step();
    finished_ = true;
    return build_result();
  }

 private:
  // --- setup ---------------------------------------------------------------

  void build_runtimes() {
    runtimes_.resize(scenario_.components.size());
    for (std::size_t i = 0; i < scenario_.components.size(); ++i) {
      index_[scenario_.components[i].id] = i;
    }
    for (std::size_t i = 0; i < scenario_.components.size(); ++i) {
      const auto& spec = scenario_.components[i];
      Runtime& r = runtimes_[i];
      r.spec = &spec;
      const bool joins = !merges_inputs(spec.kind) && !spec.inputs.empty();
      r.ports.resize(joins ? spec.inputs.size() : 1);
      r.t_msg = spec.param_or(param::t_msg, 0.0);
      r.t_recv = spec.param_or(param::t_recv, 0.0);
      r.link_speed = spec.param_or(param::link_speed, 1.0);
      if (spec.params.count(std::string(param::bus)) != 0) {
        r.via_bus = index_.at(static_cast<int>(spec.params.at(std::string(param::bus))));
      }
      if (spec.kind == ComponentKind::bus_arbiter) {
        r.bus = std::make_unique<SharedBus>(spec.position, scenario_.speed);
      }
      for (const int up : spec.inputs) runtimes_fanout_[up].push_back(spec.id);
    }
    for (std::size_t i = 0; i < runtimes_.size(); ++i) {
      auto it = runtimes_fanout_.find(scenario_.components[i].id);
      if (it != runtimes_fanout_.end()) {
        runtimes_[i].fanout = it->second;
        std::sort(runtimes_[i].fanout.begin(), runtimes_[i].fanout.end());
      }
    }
  }

  double transfer(std::size_t a, std::size_t b) const {
    const double speed = scenario_.speed.value() * runtimes_[a].link_speed * runtimes_[b].link_speed;
    return transfer_time(runtimes_[a].spec->position, runtimes_[b].spec->position, SpeedFactor{speed});
  }

  double fire_duration(const Runtime& r) const {
    return r.spec->kind == ComponentKind::coordinator ? r.t_recv : r.spec->t_p;
  }

  // Route delay of one message u -> v, excluding queueing.
  double route_delay(std::size_t u, std::size_t v) const {
    const Runtime& r = runtimes_[u];
    if (r.via_bus) {
      return 2.0 * transfer(u, *r.via_bus) + r.t_msg + transfer(u, v);
    }
    return r.t_msg + transfer(u, v);
  }

  std::vector<std::size_t> potential_targets(std::size_t u) const {
    std::vector<std::size_t> out;
    const Runtime& r = runtimes_[u];
    if (!emits_on_fire(r.spec->kind)) return out;
    if (r.spec->kind == ComponentKind::cache) {
      // replies go back to whoever lists the cache among its inputs
      for (std::size_t v = 0; v < runtimes_.size(); ++v) {
        const auto& ins = runtimes_[v].spec->inputs;
        if (std::find(ins.begin(), ins.end(), r.spec->id) != ins.end()) out.push_back(v);
      }
      return out;
    }
    for (const int id : r.fanout) out.push_back(index_.at(id));
    return out;
  }

  void check_zero_delay_cycles() const {
    const std::size_t n = runtimes_.size();
    std::vector<std::vector<std::size_t>> edges(n);
    for (std::size_t u = 0; u < n; ++u) {
      for (const std::size_t v : potential_targets(u)) {
        if (route_delay(u, v) == 0.0 && fire_duration(runtimes_[v]) == 0.0 &&
            runtimes_[v].spec->kind != ComponentKind::source) {
          edges[u].push_back(v);
        }
      }
    }
    std::vector<int> color(n, 0);
    std::vector<std::size_t> stack;
    std::function<bool(std::size_t)> dfs = [&](std::size_t u) -> bool {
      color[u] = 1;
      stack.push_back(u);
      for (const std::size_t v : edges[u]) {
        if (color[v] == 1) {
          std::vector<std::string> cycle;
          auto it = std::find(stack.begin(), stack.end(), v);
          for (; it != stack.end(); ++it) cycle.push_back(runtimes_[*it].spec->name);
          cycle.push_back(runtimes_[v].spec->name);
          std::string text;
          for (std::size_t i = 0; i < cycle.size(); ++i) text += (i ? " -> " : "") + cycle[i];
          throw LivelockError("zero-delay feedback cycle: " + text, cycle);
        }
        if (color[v] == 0 && dfs(v)) return true;
      }
      stack.pop_back();
      color[u] = 2;
      return false;
    };
    for (std::size_t u = 0; u < n; ++u) {
      if (color[u] == 0) dfs(u);
    }
  }

  // --- event queue ---------------------------------------------------------

  std::uint64_t fresh_id() { return next_id_++; }

  void push(double time, EventType type, std::size_t target, std::size_t slot = 0) {
    queue_.push(Event{time, fresh_id(), type, target, slot});
  }

  void push_stimulus(const SignalEvent& s) {
    stimuli_.push_back(s);
    queue_.push(Event{s.emit_time, s.id, EventType::stimulus, index_.at(s.source), stimuli_.size() - 1});
  }

  void step() {
    const Event e = queue_.top();
    queue_.pop();
    if (++processed_ > options_.max_events) {
      throw LivelockError(fmt::format("event budget of {} exhausted at t={}", options_.max_events, e.time), {});
    }
    now_ = e.time;
    last_event_time_ = std::max(last_event_time_, e.time);
    switch (e.type) {
      case EventType::stimulus: on_stimulus(e); break;
      case EventType::arrival: on_arrival(e); break;
      case EventType::wakeup: on_wakeup(e); break;
      case EventType::work_done: on_work_done(e); break;
      case EventType::request_arrival: on_request_arrival(e); break;
      case EventType::arbitrate: on_arbitrate(e); break;
      case EventType::grant_arrival: on_grant_arrival(e); break;
      case EventType::bus_free: on_bus_free(e); break;
    }
  }

  void request_wakeup(std::size_t i) {
    Runtime& r = runtimes_[i];
    if (r.busy || r.wakeup_pending) return;
    r.wakeup_pending = true;
    push(now_, EventType::wakeup, i);
  }

  void add_pending(Runtime& r, std::size_t count) {
    if (r.pending == 0 && count > 0) r.pending_since = now_;
    r.pending += count;
  }

  void remove_pending(Runtime& r, std::size_t count) {
    r.pending -= count;
    if (r.pending == 0 && count > 0) r.pending_spans.emplace_back(r.pending_since, now_);
  }

  void record(Runtime& r, double start, double end, State state, std::string detail) {
    if (end == start && state != State::payload) return;
    r.activities.push_back(Activity{start, end, state, std::move(detail)});
  }

  // --- handlers ------------------------------------------------------------

  void on_stimulus(const Event& e) {
    const SignalEvent& s = stimuli_[e.slot];
    Runtime& r = runtimes_[e.target];
    Outgoing out{s.id, s.kind, s.dest, first_bit(s.payload_bits)};
    if (!r.stimulus_jobs.empty() && r.stimulus_jobs.back().trigger == now_) {
      r.stimulus_jobs.back().sends.push_back(out);
    } else {
      r.stimulus_jobs.push_back(StimulusJob{now_, {out}});
    }
    request_wakeup(e.target);
  }

  void on_arrival(const Event& e) {
    const Message& m = messages_[e.slot];
    transfers_.push_back(TransferRecord{m.signal, m.kind, m.source, m.dest, m.emit, now_, m.value});
    ++delivered_;
    Runtime& r = runtimes_[e.target];
    if (r.spec->kind == ComponentKind::source) return;  // responses to a stimulus source are absorbed

    std::size_t port = 0;
    if (r.ports.size() > 1 || (!merges_inputs(r.spec->kind) && !r.spec->inputs.empty())) {
      const auto& ins = r.spec->inputs;
      const auto it = std::find(ins.begin(), ins.end(), m.source);
      if (it == ins.end()) {
        throw SimulationError(fmt::format("'{}' received a signal from '{}', which is not one of its inputs",
                                          r.spec->name, runtimes_[index_.at(m.source)].spec->name));
      }
      port = static_cast<std::size_t>(it - ins.begin());
    }
    Input in{now_, m.source, m.signal, m.value};
    auto& q = r.ports[port];
    q.insert(std::upper_bound(q.begin(), q.end(), in), in);
    add_pending(r, 1);
    request_wakeup(e.target);
  }

  void on_wakeup(const Event& e) {
    runtimes_[e.target].wakeup_pending = false;
    try_start(e.target);
  }

  void on_work_done(const Event& e) {
    Runtime& r = runtimes_[e.target];
    r.busy = false;
    Completion done = std::move(r.completion);
    r.completion = {};
    if (done.depart) depart(e.target, *done.depart, now_);
    for (auto& o : done.release) r.sends.push_back(std::move(o));
    request_wakeup(e.target);
  }

  void on_request_arrival(const Event& e) {
    const BusRequest& req = requests_[e.slot];
    const Message& m = messages_[request_messages_[e.slot]];
    transfers_.push_back(TransferRecord{m.signal, m.kind, m.source, m.dest, m.emit, now_, m.value});
    Runtime& a = runtimes_[e.target];
    BusRequest queued = req;
    queued.arrival = now_;
    a.bus->enqueue(queued);
    add_pending(a, 1);
    schedule_arbitration(e.target);
  }

  void schedule_arbitration(std::size_t arbiter) {
    Runtime& a = runtimes_[arbiter];
    if (a.arbitrate_pending || !a.bus->idle_at(now_)) return;
    a.arbitrate_pending = true;
    push(now_, EventType::arbitrate, arbiter);
  }

  void on_arbitrate(const Event& e) {
    Runtime& a = runtimes_[e.target];
    a.arbitrate_pending = false;
    const auto g = a.bus->grant(now_);
    if (!g) return;
    remove_pending(a, 1);
    const std::size_t sender = index_.at(g->request.sender);
    const std::size_t dest = index_.at(g->request.dest);
    const std::string& sname = runtimes_[sender].spec->name;
    const std::string& dname = runtimes_[dest].spec->name;
    record(a, g->issued, g->grant_arrival, State::arbitration, "grant " + sname);
    record(a, g->grant_arrival, g->departure, State::payload, "carry " + sname + "->" + dname);
    record(a, g->departure, g->delivery, State::transfer_wait, "propagate " + sname + "->" + dname);

    const std::uint64_t grant_signal = fresh_id();
    messages_.push_back(Message{grant_signal, SignalKind::grant, a.spec->id, g->request.sender, now_, std::nullopt});
    grants_.push_back(*g);
    grant_messages_.push_back(messages_.size() - 1);
    push(g->grant_arrival, EventType::grant_arrival, sender, grants_.size() - 1);

    const Outgoing& out = runtimes_[sender].in_flight;
    const std::uint64_t signal = out.signal ? *out.signal : fresh_id();
    messages_.push_back(Message{signal, out.kind, g->request.sender, g->request.dest, g->departure, out.value});
    ++emitted_;
    push(g->delivery, EventType::arrival, dest, messages_.size() - 1);
    push(g->delivery, EventType::bus_free, e.target);
  }

  void on_grant_arrival(const Event& e) {
    const Message& m = messages_[grant_messages_[e.slot]];
    transfers_.push_back(TransferRecord{m.signal, m.kind, m.source, m.dest, m.emit, now_, m.value});
    const BusGrant& g = grants_[e.slot];
    Runtime& r = runtimes_[e.target];
    const std::string& dname = runtimes_[index_.at(g.request.dest)].spec->name;
    record(r, r.request_started, now_, State::arbitration, "await grant");
    record(r, now_, g.departure, State::transfer_wait, "send ->" + dname);
    push(g.departure, EventType::work_done, e.target);
  }

  void on_bus_free(const Event& e) { schedule_arbitration(e.target); }

  // --- activity selection -------------------------------------------------------

  bool ready_to_fire(const Runtime& r) const {
    if (r.spec->kind == ComponentKind::source || r.spec->kind == ComponentKind::bus_arbiter) return false;
    return std::all_of(r.ports.begin(), r.ports.end(), [](const auto& q) { return !q.empty(); });
  }

  void try_start(std::size_t i) {
    Runtime& r = runtimes_[i];
    while (!r.busy) {
      if (!r.sends.empty()) {
        Outgoing o = std::move(r.sends.front());
        r.sends.pop_front();
        start_send(i, std::move(o));
      } else if (!r.stimulus_jobs.empty()) {
        StimulusJob job = std::move(r.stimulus_jobs.front());
        r.stimulus_jobs.pop_front();
        start_stimulus(i, std::move(job));
      } else if (ready_to_fire(r)) {
        fire(i);
      } else {
        break;
      }
    }
  }

  void start_send(std::size_t i, Outgoing o) {
    Runtime& r = runtimes_[i];
    const std::size_t dest = index_.at(o.dest);
    if (r.via_bus) {
      const std::size_t arbiter = *r.via_bus;
      r.busy = true;
      r.request_started = now_;
      const std::uint64_t req_signal = fresh_id();
      BusRequest req;
      req.id = req_signal;
      req.sender = r.spec->id;
      req.dest = o.dest;
      req.grant_leg = transfer(arbiter, i);
      req.t_msg = r.t_msg;
      req.message_leg = transfer(i, dest);
      requests_.push_back(req);
      messages_.push_back(Message{req_signal, SignalKind::request, r.spec->id, runtimes_[arbiter].spec->id, now_, std::nullopt});
      request_messages_.push_back(messages_.size() - 1);
      r.in_flight = std::move(o);
      push(now_ + transfer(i, arbiter), EventType::request_arrival, arbiter, requests_.size() - 1);
      return;
    }
    if (r.t_msg > 0.0) {
      r.busy = true;
      record(r, now_, now_ + r.t_msg, State::transfer_wait, "send ->" + runtimes_[dest].spec->name);
      r.completion.depart = std::move(o);
      push(now_ + r.t_msg, EventType::work_done, i);
      return;
    }
    depart(i, o, now_);
  }

  void depart(std::size_t i, const Outgoing& o, double t) {
    const std::size_t dest = index_.at(o.dest);
    const std::uint64_t signal = o.signal ? *o.signal : fresh_id();
    messages_.push_back(Message{signal, o.kind, runtimes_[i].spec->id, o.dest, t, o.value});
    ++emitted_;
    push(t + transfer(i, dest), EventType::arrival, dest, messages_.size() - 1);
  }

  void start_stimulus(std::size_t i, StimulusJob job) {
    Runtime& r = runtimes_[i];
    if (r.spec->t_p > 0.0) {
      r.busy = true;
      record(r, now_, now_ + r.spec->t_p, State::payload, "stimulus");
      firings_.push_back(FiringRecord{r.spec->id, now_, now_ + r.spec->t_p, State::payload,
                                      job.sends.empty() ? std::nullopt : job.sends.front().value, {}});
      r.completion.release = std::move(job.sends);
      push(now_ + r.spec->t_p, EventType::work_done, i);
      return;
    }
    for (auto& o : job.sends) r.sends.push_back(std::move(o));
  }

  void fire(std::size_t i) {
    Runtime& r = runtimes_[i];
    std::vector<Input> taken;
    if (merges_inputs(r.spec->kind)) {
      taken.push_back(r.ports[0].front());
      r.ports[0].pop_front();
    } else {
      for (auto& q : r.ports) {
        taken.push_back(q.front());
        q.pop_front();
      }
    }
    remove_pending(r, taken.size());

    std::optional<bool> value;
    if (r.spec->kind == ComponentKind::gate) {
      std::vector<bool> bits;
      bool known = true;
      for (const auto& in : taken) {
        if (!in.value) known = false;
        bits.push_back(in.value.value_or(false));
      }
      if (known) {
        std::array<bool, 2> arr{};
        for (std::size_t k = 0; k < bits.size(); ++k) arr[k] = bits[k];
        value = gate_evaluate(*r.spec->op, std::span<const bool>(arr.data(), bits.size()));
      }
    } else {
      value = taken.front().value;
    }

    const bool coordinator = r.spec->kind == ComponentKind::coordinator;
    const double d = fire_duration(r);
    const State state = coordinator ? State::transfer_wait : State::payload;
    record(r, now_, now_ + d, state, coordinator ? "receive" : "fire");
    FiringRecord fr{r.spec->id, now_, now_ + d, state, value, {}};
    for (const auto& in : taken) fr.consumed.push_back(in.signal);
    firings_.push_back(std::move(fr));

    std::vector<Outgoing> outputs;
    if (r.spec->kind == ComponentKind::cache) {
      outputs.push_back(Outgoing{std::nullopt, SignalKind::result, taken.front().sender, value});
    } else if (emits_on_fire(r.spec->kind)) {
      for (const int target : r.fanout) outputs.push_back(Outgoing{std::nullopt, SignalKind::data, target, value});
    }
    if (d > 0.0) {
      r.busy = true;
      r.completion.release = std::move(outputs);
      push(now_ + d, EventType::work_done, i);
    } else {
      for (auto& o : outputs) r.sends.push_back(std::move(o));
    }
  }

  // --- accounting ------------------------------------------------------------

  std::vector<TraceInterval> tile(const Runtime& r, double makespan) const {
    std::vector<Activity> acts = r.activities;
    std::stable_sort(acts.begin(), acts.end(), [](const Activity& a, const Activity& b) {
      return a.start < b.start;
    });
    std::vector<std::pair<double, double>> spans = r.pending_spans;
    if (r.pending > 0) spans.emplace_back(r.pending_since, makespan);

    std::vector<TraceInterval> out;
    const int id = r.spec->id;
    auto emit_fill = [&](double from, double to, State state) {
      if (!(to > from)) return;
      if (!out.empty() && out.back().state == state && out.back().end == from && state != State::payload &&
          out.back().detail.empty()) {
        out.back().end = to;
        return;
      }
      out.push_back(TraceInterval{id, from, to, state, {}});
    };
    auto fill = [&](double from, double to) {
      double cursor = from;
      for (const auto& [s, e] : spans) {
        if (e <= cursor || s >= to) continue;
        if (s > cursor) emit_fill(cursor, s, State::idle);
        const double b_end = std::min(e, to);
        emit_fill(std::max(cursor, s), b_end, State::blocked);
        cursor = b_end;
      }
      emit_fill(cursor, to, State::idle);
    };

    double t = 0.0;
    for (const auto& a : acts) {
      if (a.start < t) {
        throw SimulationError(fmt::format("internal: overlapping activities on '{}' at t={}", r.spec->name, a.start));
      }
      fill(t, a.start);
      out.push_back(TraceInterval{id, a.start, a.end, a.state, a.detail});
      t = a.end;
    }
    fill(t, makespan);
    return out;
  }

  SimulationResult build_result() {
    SimulationResult result;
    result.makespan = last_event_time_;
    for (const auto& r : runtimes_) {
      ComponentInfo info;
      info.id = r.spec->id;
      info.name = r.spec->name;
      info.kind = r.spec->kind;
      info.position = r.spec->position;
      info.terminal = r.spec->kind == ComponentKind::sink ||
                      ((r.spec->kind == ComponentKind::processing_unit || r.spec->kind == ComponentKind::neuron ||
                        r.spec->kind == ComponentKind::gate) &&
                       r.fanout.empty());
      result.components.push_back(std::move(info));
    }
    std::vector<std::size_t> order(runtimes_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return runtimes_[a].spec->id < runtimes_[b].spec->id;
    });
    for (const std::size_t i : order) {
      const Runtime& r = runtimes_[i];
      auto tiles = tile(r, result.makespan);
      Utilization& u = result.utilization[r.spec->id];
      for (const auto& iv : tiles) u[iv.state] += iv.duration();
      result.trace.insert(result.trace.end(), tiles.begin(), tiles.end());
      for (const auto& q : r.ports) {
        for (const auto& in : q) result.unconsumed.push_back(in.signal);
      }
    }
    result.transfers = std::move(transfers_);
    result.firings = std::move(firings_);
    result.signals_emitted = emitted_;
    result.signals_delivered = delivered_;
    result.metrics["makespan"] = result.makespan;
    if (result.makespan > 0.0 && !result.components.empty()) {
      result.metrics["payload_fraction"] = payload_fraction(result);
    }
    result.metrics["signals_emitted"] = static_cast<double>(result.signals_emitted);
    result.metrics["signals_delivered"] = static_cast<double>(result.signals_delivered);
    result.metrics["unconsumed_inputs"] = static_cast<double>(result.unconsumed.size());
    return result;
  }

  Scenario scenario_;
  EngineOptions options_;
  std::vector<Runtime> runtimes_;
  std::map<int, std::size_t> index_;
  std::map<int, std::vector<int>> runtimes_fanout_;

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::vector<SignalEvent> stimuli_;
  std::vector<Message> messages_;
  std::vector<BusRequest> requests_;
  std::vector<std::size_t> request_messages_;
  std::vector<BusGrant> grants_;
  std::vector<std::size_t> grant_messages_;
  std::vector<TransferRecord> transfers_;
  std::vector<FiringRecord> firings_;

  std::set<std::uint64_t> user_ids_;
  std::uint64_t next_id_ = 0;
  std::uint64_t internal_base_ = 0;
  double now_ = 0.0;
  double last_event_time_ = 0.0;
  std::size_t processed_ = 0;
  std::size_t emitted_ = 0;
  std::size_t delivered_ = 0;
  bool finished_ = false;
};

Simulator::Simulator(Scenario scenario, EngineOptions options)
    : impl_(std::make_unique<Impl>(std::move(scenario), options)) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

void Simulator::schedule(const SignalEvent& event) { impl_->schedule(event); }
void Simulator::run_until(double t) { impl_->run_until(t); }
SimulationResult Simulator::run() { return impl_->finish(); }
double Simulator::now() const noexcept { return impl_->now(); }

SimulationResult run(const Scenario& scenario, EngineOptions options) {
  Simulator sim(scenario, options);
  return sim.run();
}

Utilization utilization(const SimulationResult& result, int component) {
  const auto it = result.utilization.find(component);
  if (it == result.utilization.end()) {
    throw std::out_of_range(fmt::format("component {} is not part of the result", component));
  }
  return it->second;
}

double payload_fraction(const SimulationResult& result) {
  if (!(result.makespan > 0.0)) throw SimulationError("payload fraction undefined for zero makespan");
  if (result.components.empty()) throw SimulationError("payload fraction undefined without components");
  double payload = 0.0;
  for (const auto& [id, u] : result.utilization) {
    const auto it = u.find(State::payload);
    if (it != u.end()) payload += it->second;
  }
  return payload / (static_cast<double>(result.components.size()) * result.makespan);
}

}  // namespace tsim
