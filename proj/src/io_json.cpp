#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include <fmt/format.h>

#include "json.hpp"
#include "tsim/error.hpp"
#include "tsim/io.hpp"

namespace tsim {

namespace {

using json = nlohmann::json;
using Code = ScenarioError::Code;

[[noreturn]] void schema(const std::string& path, const std::string& message) {
  throw ScenarioError(Code::schema, path, message);
}

std::string line_column(std::string_view doc, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, doc.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (doc[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return fmt::format("line {}, column {}", line, column);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema(path + "/" + key, "unknown key '" + key + "'");
    }
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema(path + "/" + key, std::string("missing required key '") + key + "'");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema(path, "expected a finite number");
  return d;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema(path, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) schema(path, "integer out of range");
  return static_cast<int>(i);
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) schema(path, "expected a string");
  return v.get<std::string>();
}

ComponentSpec parse_component(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  reject_unknown(j, path, {"id", "name", "kind", "position", "t_p", "inputs", "op", "params"});
  ComponentSpec c;
  c.id = integer(require(j, path, "id"), path + "/id");
  const std::string kind = text(require(j, path, "kind"), path + "/kind");
  const auto k = parse_component_kind(kind);
  if (!k) schema(path + "/kind", "unknown component kind '" + kind + "'");
  c.kind = *k;
  c.name = j.contains("name") ? text(j["name"], path + "/name") : fmt::format("{}{}", kind, c.id);
  const json& pos = require(j, path, "position");
  if (!pos.is_array() || pos.size() != 2) schema(path + "/position", "expected [x, y]");
  c.position = {number(pos[0], path + "/position/0"), number(pos[1], path + "/position/1")};
  if (j.contains("t_p")) c.t_p = number(j["t_p"], path + "/t_p");
  if (j.contains("inputs")) {
    const json& in = j["inputs"];
    if (!in.is_array()) schema(path + "/inputs", "expected an array of component ids");
    for (std::size_t i = 0; i < in.size(); ++i) c.inputs.push_back(integer(in[i], fmt::format("{}/inputs/{}", path, i)));
  }
  if (j.contains("op")) {
    const std::string op = text(j["op"], path + "/op");
    const auto g = parse_gate_op(op);
    if (!g) schema(path + "/op", "unknown gate op '" + op + "'");
    c.op = *g;
  }
  if (j.contains("params")) {
    const json& p = j["params"];
    if (!p.is_object()) schema(path + "/params", "expected an object");
    for (const auto& [key, value] : p.items()) c.params[key] = number(value, path + "/params/" + key);
  }
  return c;
}

SignalEvent parse_stimulus(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  reject_unknown(j, path, {"id", "source", "dest", "emit_time", "kind", "payload"});
  SignalEvent s;
  const json& id = require(j, path, "id");
  if (!id.is_number_unsigned()) schema(path + "/id", "expected a non-negative integer");
  s.id = id.get<std::uint64_t>();
  s.source = integer(require(j, path, "source"), path + "/source");
  s.dest = integer(require(j, path, "dest"), path + "/dest");
  if (j.contains("emit_time")) s.emit_time = number(j["emit_time"], path + "/emit_time");
  if (j.contains("kind")) {
    const std::string kind = text(j["kind"], path + "/kind");
    const auto k = parse_signal_kind(kind);
    if (!k) schema(path + "/kind", "unknown signal kind '" + kind + "'");
    s.kind = *k;
  }
  if (j.contains("payload")) {
    const json& p = j["payload"];
    if (!p.is_array()) schema(path + "/payload", "expected an array of booleans");
    std::vector<bool> bits;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_boolean()) schema(fmt::format("{}/payload/{}", path, i), "expected a boolean");
      bits.push_back(p[i].get<bool>());
    }
    s.payload_bits = std::move(bits);
  }
  return s;
}

}  // namespace

Scenario parse_scenario(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(Code::syntax, line_column(document, e.byte), "malformed JSON");
  }
  if (!root.is_object()) schema("", "document must be a JSON object");
  reject_unknown(root, "", {"name", "speed", "components", "stimuli", "expected_metrics"});

  Scenario s;
  s.name = text(require(root, "", "name"), "/name");
  if (root.contains("speed")) {
    const double v = number(root["speed"], "/speed");
    if (!(v > 0.0)) schema("/speed", "speed must be > 0");
    s.speed = SpeedFactor{v};
  }
  const json& comps = require(root, "", "components");
  if (!comps.is_array()) schema("/components", "expected an array");
  for (std::size_t i = 0; i < comps.size(); ++i) s.components.push_back(parse_component(comps[i], fmt::format("/components/{}", i)));
  if (root.contains("stimuli")) {
    const json& st = root["stimuli"];
    if (!st.is_array()) schema("/stimuli", "expected an array");
    for (std::size_t i = 0; i < st.size(); ++i) s.stimuli.push_back(parse_stimulus(st[i], fmt::format("/stimuli/{}", i)));
  }
  if (root.contains("expected_metrics")) {
    const json& m = root["expected_metrics"];
    if (!m.is_object()) schema("/expected_metrics", "expected an object");
    for (const auto& [key, value] : m.items()) s.expected_metrics[key] = number(value, "/expected_metrics/" + key);
  }
  validate(s);
  return s;
}

std::string serialize_scenario(const Scenario& scenario) {
  json root = json::object();
  root["name"] = scenario.name;
  root["speed"] = scenario.speed.value();
  json comps = json::array();
  for (const auto& c : scenario.components) {
    json j = json::object();
    j["id"] = c.id;
    j["name"] = c.name;
    j["kind"] = std::string(to_string(c.kind));
    j["position"] = json::array({c.position.x, c.position.y});
    j["t_p"] = c.t_p;
    if (!c.inputs.empty()) j["inputs"] = c.inputs;
    if (c.op) j["op"] = std::string(to_string(*c.op));
    if (!c.params.empty()) j["params"] = c.params;
    comps.push_back(std::move(j));
  }
  root["components"] = std::move(comps);
  json stimuli = json::array();
  for (const auto& s : scenario.stimuli) {
    json j = json::object();
    j["id"] = s.id;
    j["source"] = s.source;
    j["dest"] = s.dest;
    j["emit_time"] = s.emit_time;
    j["kind"] = std::string(to_string(s.kind));
    if (s.payload_bits) {
      json bits = json::array();
      for (bool b : *s.payload_bits) bits.push_back(b);
      j["payload"] = std::move(bits);
    }
    stimuli.push_back(std::move(j));
  }
  root["stimuli"] = std::move(stimuli);
  if (!scenario.expected_metrics.empty()) root["expected_metrics"] = scenario.expected_metrics;
  return root.dump(2) + "\n";
}

}  // namespace tsim
