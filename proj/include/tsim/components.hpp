#pragma once

// Behavioral models of the component kinds. The engine drives the bus and
// gate models through these types; the free functions are also usable on
// their own for closed-form checks.

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "tsim/model.hpp"
#include "tsim/timespace.hpp"

namespace tsim {

// Truth-table evaluation. Throws ArityError when inputs.size() != gate_arity(op).
bool gate_evaluate(GateOp op, std::span<const bool> inputs);

struct InputArrival {
  double time = 0.0;
  bool value = false;
};

struct GateSettlement {
  double output_valid_time = 0.0;
  bool value = false;
};

// Output of a gate once every input has arrived: valid at
// max(arrival) + t_p. Throws ArityError when an input is missing or extra.
GateSettlement gate_settle(const ComponentSpec& gate, std::span<const InputArrival> input_arrivals);

// Value a component's output shows at `time`: the value of the latest firing
// completed by then, or nullopt ("undefined") before the first completion.
std::optional<bool> read_output(const SimulationResult& result, int component, double time);

// --- shared bus -----------------------------------------------------------

struct BusRequest {
  std::uint64_t id = 0;
  int sender = 0;
  int dest = 0;
  double arrival = 0.0;      // when the request reached the arbiter
  double grant_leg = 0.0;    // arbiter -> sender propagation
  double t_msg = 0.0;        // time the sender drives the message onto the bus
  double message_leg = 0.0;  // sender -> destination propagation
};

struct BusGrant {
  BusRequest request;
  double issued = 0.0;         // grant leaves the arbiter; bus becomes occupied
  double grant_arrival = 0.0;  // sender sees the grant and starts sending
  double departure = 0.0;      // last bit leaves the sender
  double delivery = 0.0;       // message fully arrived; bus released
};

struct BusProtocolState {
  std::deque<std::uint64_t> queue;  // request ids in service order
  double busy_until = 0.0;
  std::size_t grants_issued = 0;
};

// FIFO arbiter for a shared medium. Requests are served in arrival order,
// ties broken by the lower sender id; exactly one transfer occupies the bus
// from grant issuance until the message has arrived.
class SharedBus {
 public:
  SharedBus(TimePoint arbiter_position, SpeedFactor speed);

  TimePoint position() const noexcept { return position_; }
  SpeedFactor speed() const noexcept { return speed_; }
  const BusProtocolState& state() const noexcept { return state_; }

  void enqueue(const BusRequest& request);
  bool idle_at(double now) const noexcept { return state_.busy_until <= now; }
  std::size_t queued() const noexcept { return pending_.size(); }

  // Grants the head of the queue if the bus is free at `now`.
  std::optional<BusGrant> grant(double now);

 private:
  TimePoint position_;
  SpeedFactor speed_;
  BusProtocolState state_;
  std::vector<BusRequest> pending_;
};

// Runs one request through the protocol using the bus's own geometry:
// the request travels sender -> arbiter, waits for the bus, the grant travels
// arbiter -> sender, the sender drives t_msg, then the message travels
// sender -> destination. Returns the delivery time. Requests must be
// submitted in order of their arrival at the arbiter.
double bus_transfer(SharedBus& bus, const SignalEvent& request, TimePoint sender_pos, TimePoint dest_pos,
                    double t_msg);

// --- cache ----------------------------------------------------------------

// Single-ported cache serving one request at a time, FIFO.
class CacheServer {
 public:
  CacheServer(const ComponentSpec& cache, SpeedFactor speed);

  // Response time at the core. Calls must come in service order.
  double access(const ComponentSpec& core, double request_time);

  double busy_until() const noexcept { return busy_until_; }

 private:
  TimePoint position_;
  double t_p_;
  SpeedFactor speed_;
  double busy_until_ = 0.0;
};

// Uncontended access: request_time + 2 * transfer_time(core, cache) + cache.t_p.
double cache_access(const ComponentSpec& core, const ComponentSpec& cache, double request_time,
                    SpeedFactor speed = SpeedFactor{1.0});

// --- coordinator / workers ----------------------------------------------------

// Scenario in which `coordinator` dispatches one task to every worker
// (t_dispatch each, sequentially), workers compute for t_work and return the
// result, and the coordinator processes results in arrival order (t_recv each).
Scenario make_dispatch_scenario(const ComponentSpec& coordinator, std::span<const ComponentSpec> workers,
                                double t_dispatch, double t_work, double t_recv);

// Runs make_dispatch_scenario and adds the metrics makespan, efficiency
// (sum of worker payload / ((N+1) * makespan)), coordinator_idle and
// coordinator_blocked. Throws DomainError for an empty worker list.
SimulationResult dispatch_and_collect(const ComponentSpec& coordinator, std::span<const ComponentSpec> workers,
                                      double t_dispatch, double t_work, double t_recv);

// Metric block shared by dispatch_and_collect and the distributed scenario.
void add_dispatch_metrics(const Scenario& scenario, SimulationResult& result);

}  // namespace tsim
