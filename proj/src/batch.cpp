#include <exception>
#include <vector>

#include <omp.h>

#include "tsim/engine.hpp"

namespace tsim {

std::vector<SimulationResult> run_batch_serial(std::span<const Scenario> scenarios, EngineOptions options) {
  std::vector<SimulationResult> out;
  out.reserve(scenarios.size());
  for (const auto& s : scenarios) out.push_back(run(s, options));
  return out;
}

std::vector<SimulationResult> run_batch(std::span<const Scenario> scenarios, EngineOptions options) {
  const auto n = static_cast<std::ptrdiff_t>(scenarios.size());
  std::vector<SimulationResult> out(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());

  // Each run owns its own simulator; results land in their input slot.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = run(scenarios[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace tsim
