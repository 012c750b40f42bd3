#pragma once

// Value types shared by the engine, the component models, the scenario
// builders and the exporters.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsim/timespace.hpp"

namespace tsim {

enum class ComponentKind {
  source,
  gate,
  processing_unit,
  bus_arbiter,
  cache,
  coordinator,
  worker,
  neuron,
  sink,
};

enum class GateOp { AND, OR, XOR, NOT };

enum class SignalKind { data, request, grant, result };

// How a component spends an interval of its life.
enum class State { payload, transfer_wait, arbitration, blocked, idle };

std::string_view to_string(ComponentKind kind) noexcept;
std::string_view to_string(GateOp op) noexcept;
std::string_view to_string(SignalKind kind) noexcept;
std::string_view to_string(State state) noexcept;

std::optional<ComponentKind> parse_component_kind(std::string_view text) noexcept;
std::optional<GateOp> parse_gate_op(std::string_view text) noexcept;
std::optional<SignalKind> parse_signal_kind(std::string_view text) noexcept;

// Number of inputs a gate of this kind takes (1 for NOT, 2 otherwise).
std::size_t gate_arity(GateOp op) noexcept;

// Components that may be the `source` of a stimulus.
bool is_stimulus_capable(ComponentKind kind) noexcept;

// Kinds that fire once per input arrival (single merged FIFO), as opposed to
// kinds that join one value from every input port before firing.
bool merges_inputs(ComponentKind kind) noexcept;

// Recognised keys of ComponentSpec::params.
namespace param {
inline constexpr std::string_view t_msg = "t_msg";            // serialization time per sent message
inline constexpr std::string_view bus = "bus";                // id of the bus_arbiter carrying outputs
inline constexpr std::string_view t_recv = "t_recv";          // coordinator: per-result receive time
inline constexpr std::string_view link_speed = "link_speed";  // speed multiplier on links touching this component
}  // namespace param

struct ComponentSpec {
  int id = 0;
  std::string name;
  ComponentKind kind = ComponentKind::sink;
  TimePoint position;
  double t_p = 0.0;
  // Upstream component ids. For joining kinds the order is the port order;
  // for every kind it defines who receives this component's outputs.
  std::vector<int> inputs;
  std::optional<GateOp> op;
  std::map<std::string, double> params;

  double param_or(std::string_view key, double fallback) const;

  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

struct SignalEvent {
  std::uint64_t id = 0;
  int source = 0;
  int dest = 0;
  double emit_time = 0.0;
  SignalKind kind = SignalKind::data;
  std::optional<std::vector<bool>> payload_bits;

  friend bool operator==(const SignalEvent&, const SignalEvent&) = default;
};

struct Scenario {
  std::string name;
  std::vector<ComponentSpec> components;
  std::vector<SignalEvent> stimuli;
  SpeedFactor speed{1.0};
  std::map<std::string, double> expected_metrics;

  const ComponentSpec* find(int id) const noexcept;
  const ComponentSpec* find(std::string_view name) const noexcept;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Throws ScenarioError (duplicate_id, dangling_reference or schema) on the
// first violation, with a JSON-pointer-like path to the offending field.
void validate(const Scenario& scenario);

struct TraceInterval {
  int component = 0;
  double start = 0.0;
  double end = 0.0;
  State state = State::idle;
  std::string detail;

  double duration() const noexcept { return end - start; }
};

// One signal that physically travelled between two components.
struct TransferRecord {
  std::uint64_t signal = 0;
  SignalKind kind = SignalKind::data;
  int source = 0;
  int dest = 0;
  double emit = 0.0;
  double arrival = 0.0;
  std::optional<bool> value;
};

struct FiringRecord {
  int component = 0;
  double start = 0.0;
  double end = 0.0;
  State state = State::payload;
  std::optional<bool> value;
  std::vector<std::uint64_t> consumed;  // signal ids taken from the inputs
};

struct ComponentInfo {
  int id = 0;
  std::string name;
  ComponentKind kind = ComponentKind::sink;
  TimePoint position;
  bool terminal = false;  // receives signals but forwards nothing
};

using Utilization = std::map<State, double>;

struct SimulationResult {
  double makespan = 0.0;
  std::vector<ComponentInfo> components;
  std::vector<TraceInterval> trace;         // ordered by (component, start)
  std::vector<TransferRecord> transfers;    // in delivery order
  std::vector<FiringRecord> firings;        // in start order
  std::map<int, Utilization> utilization;
  std::map<std::string, double> metrics;
  std::size_t signals_emitted = 0;
  std::size_t signals_delivered = 0;
  std::vector<std::uint64_t> unconsumed;    // delivered but never taken by a firing

  const ComponentInfo* find(int id) const noexcept;
  const ComponentInfo* find(std::string_view name) const noexcept;
};

}  // namespace tsim
