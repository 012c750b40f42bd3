#pragma once

// Deterministic discrete-event kernel. Signals propagate at the scenario's
// interaction speed; a component runs one activity at a time, cannot start a
// computation before its inputs have physically arrived and cannot send a
// result before it has been computed. Every component's life is tiled with
// payload / transfer_wait / arbitration / blocked / idle intervals.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "tsim/model.hpp"

namespace tsim {

struct EngineOptions {
  // Hard cap on processed events; exceeding it raises LivelockError.
  std::size_t max_events = 50'000'000;
};

class Simulator {
 public:
  // Validates the scenario, rejects zero-delay feedback cycles and schedules
  // the scenario's stimuli.
  explicit Simulator(Scenario scenario, EngineOptions options = {});
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  // Queue an additional stimulus. Events are processed in (time, id) order.
  // Throws SchedulingError for a time earlier than now(), a duplicate id or
  // an invalid source/destination.
  void schedule(const SignalEvent& event);

  // Processes every event with time <= t.
  void run_until(double t);

  // Processes the remaining events and returns the accounted result.
  // The simulator cannot be used afterwards.
  SimulationResult run();

  double now() const noexcept;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

SimulationResult run(const Scenario& scenario, EngineOptions options = {});

// State -> total time for one component. Throws std::out_of_range for an
// unknown id.
Utilization utilization(const SimulationResult& result, int component);

// Sum of payload time over all components / (component count * makespan).
// Throws SimulationError when the makespan is zero.
double payload_fraction(const SimulationResult& result);

// Independent runs over a batch of scenarios. run_batch spreads the runs over
// OpenMP threads; run_batch_serial is the reference. Both return results in
// input order and are bit-identical.
std::vector<SimulationResult> run_batch(std::span<const Scenario> scenarios, EngineOptions options = {});
std::vector<SimulationResult> run_batch_serial(std::span<const Scenario> scenarios, EngineOptions options = {});

}  // namespace tsim
