#include "tsim/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "tsim/error.hpp"

namespace tsim {

namespace {

constexpr std::array<std::pair<ComponentKind, std::string_view>, 9> kKindNames{{
    {ComponentKind::source, "source"},
    {ComponentKind::gate, "gate"},
    {ComponentKind::processing_unit, "processing_unit"},
    {ComponentKind::bus_arbiter, "bus_arbiter"},
    {ComponentKind::cache, "cache"},
    {ComponentKind::coordinator, "coordinator"},
    {ComponentKind::worker, "worker"},
    {ComponentKind::neuron, "neuron"},
    {ComponentKind::sink, "sink"},
}};

constexpr std::array<std::pair<GateOp, std::string_view>, 4> kOpNames{{
    {GateOp::AND, "AND"},
    {GateOp::OR, "OR"},
    {GateOp::XOR, "XOR"},
    {GateOp::NOT, "NOT"},
}};

constexpr std::array<std::pair<SignalKind, std::string_view>, 4> kSignalNames{{
    {SignalKind::data, "data"},
    {SignalKind::request, "request"},
    {SignalKind::grant, "grant"},
    {SignalKind::result, "result"},
}};

constexpr std::array<std::pair<State, std::string_view>, 5> kStateNames{{
    {State::payload, "payload"},
    {State::transfer_wait, "transfer_wait"},
    {State::arbitration, "arbitration"},
    {State::blocked, "blocked"},
    {State::idle, "idle"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) noexcept {
  for (const auto& [e, text] : table) {
    if (e == value) return text;
  }
  return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> value_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                             std::string_view text) noexcept {
  for (const auto& [e, name] : table) {
    if (name == text) return e;
  }
  return std::nullopt;
}

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-' || c == '.';
  });
}

[[noreturn]] void fail(ScenarioError::Code code, std::string path, const std::string& message) {
  throw ScenarioError(code, std::move(path), message);
}

void validate_params(const Scenario& scenario, const ComponentSpec& c, const std::string& base) {
  for (const auto& [key, value] : c.params) {
    const std::string path = base + "/params/" + key;
    if (!std::isfinite(value)) fail(ScenarioError::Code::schema, path, "parameter must be finite");
    if (key == param::t_msg) {
      if (value < 0.0) fail(ScenarioError::Code::schema, path, "t_msg must be >= 0");
    } else if (key == param::t_recv) {
      if (c.kind != ComponentKind::coordinator) {
        fail(ScenarioError::Code::schema, path, "t_recv is only valid on a coordinator");
      }
      if (value < 0.0) fail(ScenarioError::Code::schema, path, "t_recv must be >= 0");
    } else if (key == param::link_speed) {
      if (!(value > 0.0)) fail(ScenarioError::Code::schema, path, "link_speed must be > 0");
    } else if (key == param::bus) {
      if (value != std::floor(value)) fail(ScenarioError::Code::schema, path, "bus must be a component id");
      const ComponentSpec* arbiter = scenario.find(static_cast<int>(value));
      if (arbiter == nullptr) {
        fail(ScenarioError::Code::dangling_reference, path,
             fmt::format("bus refers to unknown component {}", value));
      }
      if (arbiter->kind != ComponentKind::bus_arbiter) {
        fail(ScenarioError::Code::schema, path, "bus must refer to a bus_arbiter");
      }
    } else {
      fail(ScenarioError::Code::schema, path, "unknown parameter '" + key + "'");
    }
  }
}

}  // namespace

std::string_view to_string(ComponentKind kind) noexcept { return name_of(kKindNames, kind); }
std::string_view to_string(GateOp op) noexcept { return name_of(kOpNames, op); }
std::string_view to_string(SignalKind kind) noexcept { return name_of(kSignalNames, kind); }
std::string_view to_string(State state) noexcept { return name_of(kStateNames, state); }

std::optional<ComponentKind> parse_component_kind(std::string_view text) noexcept {
  return value_of(kKindNames, text);
}
std::optional<GateOp> parse_gate_op(std::string_view text) noexcept { return value_of(kOpNames, text); }
std::optional<SignalKind> parse_signal_kind(std::string_view text) noexcept {
  return value_of(kSignalNames, text);
}

std::size_t gate_arity(GateOp op) noexcept { return op == GateOp::NOT ? 1 : 2; }

bool is_stimulus_capable(ComponentKind kind) noexcept {
  return kind == ComponentKind::source || kind == ComponentKind::processing_unit ||
         kind == ComponentKind::neuron || kind == ComponentKind::coordinator;
}

bool merges_inputs(ComponentKind kind) noexcept {
  return kind == ComponentKind::sink || kind == ComponentKind::cache || kind == ComponentKind::coordinator;
}

double ComponentSpec::param_or(std::string_view key, double fallback) const {
  const auto it = params.find(std::string(key));
  return it == params.end() ? fallback : it->second;
}

const ComponentSpec* Scenario::find(int id) const noexcept {
  for (const auto& c : components) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const ComponentSpec* Scenario::find(std::string_view name) const noexcept {
  for (const auto& c : components) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const ComponentInfo* SimulationResult::find(int id) const noexcept {
  for (const auto& c : components) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const ComponentInfo* SimulationResult::find(std::string_view name) const noexcept {
  for (const auto& c : components) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void validate(const Scenario& scenario) {
  using Code = ScenarioError::Code;
  if (scenario.name.empty()) fail(Code::schema, "/name", "scenario name must not be empty");

  std::set<int> ids;
  std::set<std::string> names;
  for (std::size_t i = 0; i < scenario.components.size(); ++i) {
    const auto& c = scenario.components[i];
    const std::string base = fmt::format("/components/{}", i);
    if (!ids.insert(c.id).second) fail(Code::duplicate_id, base + "/id", fmt::format("duplicate component id {}", c.id));
    if (!valid_name(c.name)) {
      fail(Code::schema, base + "/name", "name must be non-empty and use only [A-Za-z0-9_.-]");
    }
    if (!names.insert(c.name).second) fail(Code::duplicate_id, base + "/name", "duplicate component name '" + c.name + "'");
    if (!is_finite(c.position)) fail(Code::schema, base + "/position", "position must be finite");
    if (!(c.t_p >= 0.0) || !std::isfinite(c.t_p)) fail(Code::schema, base + "/t_p", "t_p must be finite and >= 0");
  }

  for (std::size_t i = 0; i < scenario.components.size(); ++i) {
    const auto& c = scenario.components[i];
    const std::string base = fmt::format("/components/{}", i);
    std::set<int> seen;
    for (std::size_t j = 0; j < c.inputs.size(); ++j) {
      const int in = c.inputs[j];
      const std::string path = fmt::format("{}/inputs/{}", base, j);
      if (ids.count(in) == 0) fail(Code::dangling_reference, path, fmt::format("unknown component {}", in));
      if (in == c.id) fail(Code::schema, path, "a component cannot feed itself");
      if (!seen.insert(in).second) fail(Code::schema, path, fmt::format("input {} listed twice", in));
    }
    if (c.kind == ComponentKind::gate) {
      if (!c.op) fail(Code::schema, base + "/op", "gate requires an op");
      if (c.inputs.size() != gate_arity(*c.op)) {
        fail(Code::schema, base + "/inputs",
             fmt::format("{} gate takes {} input(s), got {}", to_string(*c.op), gate_arity(*c.op), c.inputs.size()));
      }
    } else if (c.op) {
      fail(Code::schema, base + "/op", "op is only valid on a gate");
    }
    validate_params(scenario, c, base);
  }

  std::set<std::uint64_t> stimulus_ids;
  for (std::size_t i = 0; i < scenario.stimuli.size(); ++i) {
    const auto& s = scenario.stimuli[i];
    const std::string base = fmt::format("/stimuli/{}", i);
    if (!stimulus_ids.insert(s.id).second) fail(Code::duplicate_id, base + "/id", fmt::format("duplicate stimulus id {}", s.id));
    const ComponentSpec* src = scenario.find(s.source);
    const ComponentSpec* dst = scenario.find(s.dest);
    if (src == nullptr) fail(Code::dangling_reference, base + "/source", fmt::format("unknown component {}", s.source));
    if (dst == nullptr) fail(Code::dangling_reference, base + "/dest", fmt::format("unknown component {}", s.dest));
    if (s.source == s.dest) fail(Code::schema, base + "/dest", "self-addressed stimulus is not allowed");
    if (!(s.emit_time >= 0.0) || !std::isfinite(s.emit_time)) {
      fail(Code::schema, base + "/emit_time", "emit_time must be finite and >= 0");
    }
    if (!is_stimulus_capable(src->kind)) {
      fail(Code::schema, base + "/source",
           fmt::format("a {} cannot originate a stimulus", to_string(src->kind)));
    }
    if (dst->kind == ComponentKind::bus_arbiter) {
      fail(Code::schema, base + "/dest", "a bus_arbiter only accepts bus requests");
    }
    if (!merges_inputs(dst->kind) && dst->kind != ComponentKind::source && !dst->inputs.empty() &&
        std::find(dst->inputs.begin(), dst->inputs.end(), s.source) == dst->inputs.end()) {
      fail(Code::schema, base + "/dest",
           fmt::format("'{}' does not list '{}' among its inputs", dst->name, src->name));
    }
  }
}

}  // namespace tsim
