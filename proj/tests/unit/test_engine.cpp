#include <array>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracle/hand_trace.hpp"
#include "tsim/engine.hpp"
#include "tsim/error.hpp"
#include "tsim/io.hpp"
#include "tsim/scenarios.hpp"

using namespace tsim;

namespace {

ComponentSpec comp(int id, std::string name, ComponentKind kind, TimePoint pos, double t_p = 0.0) {
  ComponentSpec c;
  c.id = id;
  c.name = std::move(name);
  c.kind = kind;
  c.position = pos;
  c.t_p = t_p;
  return c;
}

Scenario source_to_sink(double distance) {
  Scenario s;
  s.name = "pair";
  s.components = {comp(0, "src", ComponentKind::source, {0, 0}), comp(1, "dst", ComponentKind::sink, {distance, 0}, 1.0)};
  s.stimuli = {SignalEvent{0, 0, 1, 0.0, SignalKind::data, std::nullopt}};
  return s;
}

}  // namespace

TEST(Engine, ObserverTraceShape) {
  const std::array<double, 1> speed{1.0};
  const auto r = run(build_observer_chain(1.0, 1.0, speed));
  EXPECT_DOUBLE_EQ(r.makespan, 3.0);
  const auto src = utilization(r, 0);
  EXPECT_DOUBLE_EQ(src.at(State::payload), 1.0);
  EXPECT_DOUBLE_EQ(src.at(State::idle), 2.0);
  const auto obs = utilization(r, 1);
  EXPECT_DOUBLE_EQ(obs.at(State::idle), 2.0);
  EXPECT_DOUBLE_EQ(obs.at(State::payload), 1.0);
  ASSERT_EQ(r.transfers.size(), 1u);
  EXPECT_DOUBLE_EQ(r.transfers[0].emit, 1.0);
  EXPECT_DOUBLE_EQ(r.transfers[0].arrival, 2.0);
  EXPECT_EQ(oracle::tiling_violation(r), "");
}

TEST(Engine, SignalArrivesAfterPropagation) {
  const auto r = run(source_to_sink(2.5));
  ASSERT_EQ(r.firings.size(), 1u);
  EXPECT_DOUBLE_EQ(r.firings[0].start, 2.5);
  EXPECT_DOUBLE_EQ(r.firings[0].end, 3.5);
  EXPECT_EQ(r.signals_emitted, 1u);
  EXPECT_EQ(r.signals_delivered, 1u);
  EXPECT_TRUE(r.unconsumed.empty());
}

TEST(Engine, ScenarioSpeedScalesTransfers) {
  Scenario s = source_to_sink(3.0);
  s.speed = SpeedFactor{2.0};
  const auto r = run(s);
  EXPECT_DOUBLE_EQ(r.transfers.at(0).arrival, 1.5);
}

TEST(Engine, GateBlocksUntilAllInputsArrived) {
  const auto r = run(build_one_bit_adder({1.0, 0.0}));
  const ComponentInfo* xor1 = r.find("xor1");
  ASSERT_NE(xor1, nullptr);
  std::vector<TraceInterval> iv;
  for (const auto& t : r.trace) {
    if (t.component == xor1->id) iv.push_back(t);
  }
  ASSERT_GE(iv.size(), 3u);
  EXPECT_EQ(iv[0].state, State::idle);
  EXPECT_NEAR(iv[0].end, 2.0, 1e-12);
  EXPECT_EQ(iv[1].state, State::blocked);
  EXPECT_NEAR(iv[1].end, std::sqrt(5.0), 1e-12);
  EXPECT_EQ(iv[2].state, State::payload);
  EXPECT_NEAR(iv[2].end, std::sqrt(5.0) + 1.0, 1e-12);
  EXPECT_NEAR(utilization(r, xor1->id).at(State::blocked), std::sqrt(5.0) - 2.0, 1e-12);
}

TEST(Engine, ComputeStartsOnlyAfterOperandsArrive) {
  const auto r = run(build_one_bit_adder({1.0, 0.0}));
  for (const auto& f : r.firings) {
    for (const auto sig : f.consumed) {
      for (const auto& t : r.transfers) {
        if (t.signal == sig) EXPECT_LE(t.arrival, f.start + 1e-12);
      }
    }
  }
  for (const auto& t : r.transfers) {
    bool produced_before = t.emit == 0.0;
    for (const auto& f : r.firings) {
      if (f.component == t.source && f.end <= t.emit + 1e-12) produced_before = true;
    }
    EXPECT_TRUE(produced_before);
  }
}

TEST(Engine, UtilizationErrors) {
  const auto r = run(source_to_sink(1.0));
  EXPECT_THROW(utilization(r, 42), std::out_of_range);
  Scenario quiet = source_to_sink(1.0);
  quiet.stimuli.clear();
  const auto q = run(quiet);
  EXPECT_DOUBLE_EQ(q.makespan, 0.0);
  EXPECT_THROW(payload_fraction(q), SimulationError);
}

TEST(Engine, ZeroDelayCycleRejected) {
  Scenario s;
  s.name = "loop";
  auto a = comp(0, "p", ComponentKind::processing_unit, {0, 0});
  auto b = comp(1, "q", ComponentKind::processing_unit, {0, 0});
  a.inputs = {1};
  b.inputs = {0};
  s.components = {a, b};
  try {
    Simulator sim(s);
    FAIL() << "expected LivelockError";
  } catch (const LivelockError& e) {
    EXPECT_GE(e.cycle().size(), 2u);
  }
}

TEST(Engine, EventBudget) {
  EngineOptions opt;
  opt.max_events = 2;
  EXPECT_THROW(run(build_bus_scenario(4, 0.1, 1.0), opt), LivelockError);
}

TEST(Simulator, SchedulingRules) {
  Simulator sim(source_to_sink(1.0));
  sim.run_until(0.5);
  EXPECT_LE(sim.now(), 0.5);
  EXPECT_THROW(sim.schedule(SignalEvent{0, 0, 1, 0.6, SignalKind::data, std::nullopt}), SchedulingError);
  EXPECT_THROW(sim.schedule(SignalEvent{7, 0, 1, 0.1, SignalKind::data, std::nullopt}), SchedulingError);
  EXPECT_THROW(sim.schedule(SignalEvent{8, 0, 5, 0.7, SignalKind::data, std::nullopt}), SchedulingError);
  sim.schedule(SignalEvent{9, 0, 1, 0.7, SignalKind::data, std::nullopt});
  const auto r = sim.run();
  EXPECT_EQ(r.firings.size(), 2u);
  EXPECT_DOUBLE_EQ(r.makespan, 3.0);
}

TEST(Simulator, InvalidScenarioRejected) {
  Scenario s = source_to_sink(1.0);
  s.stimuli.push_back(SignalEvent{0, 0, 1, 1.0, SignalKind::data, std::nullopt});
  EXPECT_THROW(Simulator{s}, ScenarioError);
}

TEST(Engine, Determinism) {
  const Scenario s = build_bus_scenario(5, 0.3, 0.7);
  EXPECT_EQ(write_trace_csv(run(s)), write_trace_csv(run(s)));
}
