#include <array>
#include <vector>

#include <gtest/gtest.h>

#include "oracle/hand_trace.hpp"
#include "tsim/components.hpp"
#include "tsim/engine.hpp"
#include "tsim/error.hpp"

using namespace tsim;

TEST(Gate, TruthTables) {
  for (bool a : {false, true}) {
    for (bool b : {false, true}) {
      const std::array<bool, 2> in{a, b};
      EXPECT_EQ(gate_evaluate(GateOp::AND, in), a && b);
      EXPECT_EQ(gate_evaluate(GateOp::OR, in), a || b);
      EXPECT_EQ(gate_evaluate(GateOp::XOR, in), a != b);
    }
    const std::array<bool, 1> one{a};
    EXPECT_EQ(gate_evaluate(GateOp::NOT, one), !a);
  }
}

TEST(Gate, WrongArity) {
  const std::array<bool, 1> one{true};
  const std::array<bool, 3> three{true, true, false};
  EXPECT_THROW(gate_evaluate(GateOp::AND, one), ArityError);
  EXPECT_THROW(gate_evaluate(GateOp::NOT, three), ArityError);
}

TEST(Gate, SettleAfterLastInput) {
  ComponentSpec g;
  g.name = "g";
  g.kind = ComponentKind::gate;
  g.op = GateOp::AND;
  g.t_p = 1.0;
  const std::array<InputArrival, 2> in{InputArrival{2.0, true}, InputArrival{2.236, true}};
  const auto s = gate_settle(g, in);
  EXPECT_DOUBLE_EQ(s.output_valid_time, 3.236);
  EXPECT_TRUE(s.value);
  const std::array<InputArrival, 1> missing{InputArrival{1.0, true}};
  EXPECT_THROW(gate_settle(g, missing), ArityError);
}

TEST(ReadOutput, UndefinedBeforeFirstFiring) {
  Scenario s;
  s.name = "one";
  ComponentSpec src;
  src.id = 0;
  src.name = "a";
  src.kind = ComponentKind::source;
  ComponentSpec g;
  g.id = 1;
  g.name = "not";
  g.kind = ComponentKind::gate;
  g.op = GateOp::NOT;
  g.t_p = 1.0;
  g.position = {1.0, 0.0};
  g.inputs = {0};
  s.components = {src, g};
  s.stimuli = {SignalEvent{0, 0, 1, 0.0, SignalKind::data, std::vector<bool>{false}}};
  const auto r = run(s);
  EXPECT_FALSE(read_output(r, 1, 1.5).has_value());
  ASSERT_TRUE(read_output(r, 1, 2.0).has_value());
  EXPECT_TRUE(*read_output(r, 1, 2.0));
  EXPECT_THROW(read_output(r, 9, 1.0), std::out_of_range);
}

TEST(SharedBus, FifoWithSenderTieBreak) {
  SharedBus bus({0, 0}, SpeedFactor{1.0});
  bus.enqueue(BusRequest{1, 5, 0, 1.0, 1.0, 0.1, 1.0});
  bus.enqueue(BusRequest{2, 3, 0, 1.0, 1.0, 0.1, 1.0});
  bus.enqueue(BusRequest{3, 1, 0, 0.5, 0.5, 0.1, 0.5});
  ASSERT_EQ(bus.state().queue.size(), 3u);
  EXPECT_EQ(bus.state().queue[0], 3u);
  EXPECT_EQ(bus.state().queue[1], 2u);
  EXPECT_EQ(bus.state().queue[2], 1u);
  const auto g = bus.grant(0.5);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->request.id, 3u);
  EXPECT_DOUBLE_EQ(g->delivery, 0.5 + 0.5 + 0.1 + 0.5);
  EXPECT_FALSE(bus.grant(1.0).has_value());
  EXPECT_TRUE(bus.grant(g->delivery).has_value());
}

TEST(SharedBus, SequentialTransfersMatchRecurrence) {
  SharedBus bus({0, 0}, SpeedFactor{1.0});
  const auto expect = oracle::bus_deliveries(1, 0.1, 1.0);
  const double d = bus_transfer(bus, SignalEvent{0, 1, 0, 0.0, SignalKind::data, std::nullopt}, {1, 0}, {0, 0}, 0.1);
  EXPECT_NEAR(d, expect[0], 1e-12);
  EXPECT_THROW(bus_transfer(bus, SignalEvent{1, 1, 0, 0.0, SignalKind::data, std::nullopt}, {1, 0}, {0, 0}, -1.0),
               DomainError);
}

TEST(Cache, UncontendedAccess) {
  ComponentSpec core;
  core.position = {-0.5, 0.0};
  ComponentSpec cache;
  cache.kind = ComponentKind::cache;
  cache.position = {0.0, 0.5};
  cache.t_p = 1.0;
  EXPECT_NEAR(cache_access(core, cache, 0.0), 2.414213562373095, 1e-12);
  cache.t_p = 0.1;
  EXPECT_NEAR(cache_access(core, cache, 0.0), 1.5142135623730952, 1e-12);
  cache.position = {0.0, 1.0};
  cache.t_p = 1.0;
  EXPECT_NEAR(cache_access(core, cache, 0.0), 3.23606797749979, 1e-12);
  cache.t_p = 0.0;
  EXPECT_NEAR(cache_access(core, cache, 0.0), 2.0 * std::sqrt(1.25), 1e-15);
}

TEST(Cache, ServerSerializesRequests) {
  ComponentSpec core;
  core.position = {-0.5, 0.0};
  ComponentSpec cache;
  cache.position = {0.0, 0.5};
  cache.t_p = 1.0;
  CacheServer server(cache, SpeedFactor{1.0});
  const auto [first, second] = oracle::cache_access(0.5, 1.0);
  EXPECT_NEAR(server.access(core, 0.0), first, 1e-12);
  EXPECT_NEAR(server.access(core, 0.0), second, 1e-12);
}

TEST(Dispatch, TwoWorkers) {
  ComponentSpec coord;
  coord.id = 0;
  coord.name = "coordinator";
  std::vector<ComponentSpec> workers(2);
  for (int k = 0; k < 2; ++k) {
    workers[k].id = k + 1;
    workers[k].name = "w" + std::to_string(k + 1);
    workers[k].position = {double(k + 1), 0.0};
  }
  const auto r = dispatch_and_collect(coord, workers, 0.1, 1.0, 0.1);
  const auto o = oracle::dispatch(2, 0.1, 1.0, 0.1, 1.0);
  EXPECT_NEAR(r.makespan, o.makespan, 1e-12);
  EXPECT_NEAR(r.metrics.at("coordinator_idle"), o.coordinator_idle, 1e-12);
  EXPECT_NEAR(r.metrics.at("efficiency"), o.efficiency, 1e-12);
  EXPECT_THROW(dispatch_and_collect(coord, std::span<const ComponentSpec>{}, 0.1, 1.0, 0.1), DomainError);
}
