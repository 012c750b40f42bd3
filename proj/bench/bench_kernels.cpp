#include <vector>

#include <benchmark/benchmark.h>

#include "tsim/analytic.hpp"
#include "tsim/engine.hpp"
#include "tsim/scenarios.hpp"

namespace {

std::vector<double> axis(std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n > 1 ? n - 1 : 1);
  return v;
}

void BM_SurfaceSerial(benchmark::State& state) {
  const auto n = axis(static_cast<std::size_t>(state.range(0)), 1.0, 1e6);
  const auto x = axis(static_cast<std::size_t>(state.range(0)), 0.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(tsim::efficiency_surface_serial(n, x));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_SurfaceOpenMP(benchmark::State& state) {
  const auto n = axis(static_cast<std::size_t>(state.range(0)), 1.0, 1e6);
  const auto x = axis(static_cast<std::size_t>(state.range(0)), 0.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(tsim::efficiency_surface(n, x));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

std::vector<tsim::Scenario> batch(std::size_t count) {
  std::vector<tsim::Scenario> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 1 + i % 64;
    switch (i % 3) {
      case 0: out.push_back(tsim::build_bus_scenario(n, 0.1, 1.0)); break;
      case 1: out.push_back(tsim::build_ann_layer_scenario(n, 1.0, 0.1, false)); break;
      default: out.push_back(tsim::build_distributed_scenario(n, 0.1, 1.0, 0.1, 1.0)); break;
    }
  }
  return out;
}

void BM_BatchSerial(benchmark::State& state) {
  const auto scenarios = batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tsim::run_batch_serial(scenarios));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchOpenMP(benchmark::State& state) {
  const auto scenarios = batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tsim::run_batch(scenarios));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SurfaceSerial)->Arg(64)->Arg(512)->Arg(2048)->UseRealTime();
BENCHMARK(BM_SurfaceOpenMP)->Arg(64)->Arg(512)->Arg(2048)->UseRealTime();
BENCHMARK(BM_BatchSerial)->Arg(48)->Arg(384)->UseRealTime();
BENCHMARK(BM_BatchOpenMP)->Arg(48)->Arg(384)->UseRealTime();

BENCHMARK_MAIN();
