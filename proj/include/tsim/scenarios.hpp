#pragma once

// Builders for the six case studies. Every builder returns a plain Scenario
// value named after its CLI identifier; scenario_metrics() derives the named
// metrics of that case study from a run.

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "tsim/model.hpp"

namespace tsim {

inline constexpr std::array<std::string_view, 6> kScenarioNames{"observer", "adder",  "bus",
                                                               "distributed", "cache", "ann"};

// One source (processing time t_p, at the origin) and one observer per speed
// factor, all observers at (distance, 0) with t_p each; observer k's links run
// at speed_factors[k]. expected_metrics holds the closed-form apparent times.
Scenario build_observer_chain(double t_p, double distance, std::span<const double> speed_factors);

struct AdderInputs {
  bool a = true;
  bool b = false;
  bool cin = true;
};

// Canonical one-bit adder layout on a unit grid. Sources a=(-2,0), b=(-2,1),
// cin=(-2,-1); XOR1=(0,0), AND1=(0,1), AND2=(1,1), OR=(2,1); output pins
// sum_out=(3,0), cout_out=(3,1). XOR2 sits at `xor2_position`. Gates take 1
// time unit; inputs are applied at t=0.
Scenario build_one_bit_adder(TimePoint xor2_position, AdderInputs inputs = {});

// N senders at x = spacing*k (k = 1..N) on one shared bus; arbiter and
// destination at the origin; every sender requests at t=0.
Scenario build_bus_scenario(std::size_t n_senders, double t_msg, double spacing);

// Coordinator at the origin, N workers at x = spacing*k.
Scenario build_distributed_scenario(std::size_t n_workers, double t_dispatch, double t_work, double t_recv,
                                    double spacing);

// Cores at (-0.5, 0) and (0.5, 0) sharing one cache at (0, cache_y); both
// request at t=0.
Scenario build_cache_scenario(double cache_y, double cache_t_p);

// N neurons at x = k (k = 1..N) compute for t_p from t=0, then send their
// output (t_msg each) to a collector at the origin, either over one shared
// bus or over dedicated point-to-point links.
Scenario build_ann_layer_scenario(std::size_t n_neurons, double t_p, double t_msg, bool dedicated_links);

// Builds a scenario from its CLI identifier with default parameters.
Scenario build_default(std::string_view name);

// Case-study metrics for a finished run, keyed by metric name. Scenarios
// whose name is not one of kScenarioNames yield an empty map.
std::map<std::string, double> scenario_metrics(const Scenario& scenario, const SimulationResult& result);

// Polls at t = m * period (m >= 1) strictly before `last_arrival`.
std::size_t count_stale_reads(double last_arrival, double period);

// run() plus scenario_metrics merged into result.metrics.
SimulationResult simulate(const Scenario& scenario);

}  // namespace tsim
