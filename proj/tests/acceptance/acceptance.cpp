// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/hand_trace.hpp"
#include "tsim/analytic.hpp"
#include "tsim/engine.hpp"
#include "tsim/io.hpp"
#include "tsim/scenarios.hpp"
#include "tsim/timespace.hpp"

using namespace tsim;

namespace {

struct Check {
  bool ok = true;
  std::string why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: got %.12g want %.12g +- %g", what.c_str(), got, want, tol);
    expect(std::fabs(got - want) <= tol, buf);
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(const char* id, const char* title, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.why = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0.0 && secs >= limit_s && c.ok) {
    c.ok = false;
    c.why = "runtime limit exceeded";
  }
  if (!c.ok) ++failures;
  std::printf("%s %s  %s (%.3f s)%s%s\n", id, c.ok ? "PASS" : "FAIL", title, secs, c.ok ? "" : "  -- ",
              c.ok ? "" : c.why.c_str());
}

std::string read_golden(const char* name) {
  std::ifstream in(std::string(TSIM_GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();

  criterion("AC1", "apparent-time formula", 1.0, [](Check& c) {
    c.near(apparent_time_ratio(1.0), 3.1622777, 1e-6, "ratio(1)");
    c.expect(apparent_time_ratio(1.0) > 3.0, "ratio(1) > 3");
    c.near(apparent_time(1.0, 0.0).t_a, 2.0, 1e-12, "T_A(1,0)");
    c.near(apparent_time(0.0, 1.0).t_a, std::sqrt(2.0), 1e-12, "T_A(0,1)");
  });

  criterion("AC2", "engine equals closed form on 100 random observer chains", 5.0, [](Check& c) {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> tp(0.01, 10.0);
    std::uniform_real_distribution<double> dist(0.0, 20.0);
    std::uniform_real_distribution<double> speed(0.05, 10.0);
    for (int i = 0; i < 100; ++i) {
      const double p = tp(rng);
      const double d = dist(rng);
      const std::array<double, 1> s{speed(rng)};
      const auto r = simulate(build_observer_chain(p, d, s));
      c.near(r.metrics.at("apparent_time_observer0"), apparent_time(p, d / s[0]).t_a, 1e-9, "observer");
    }
  });

  criterion("AC3", "adder truth table and XOR2 placement shift", 1.0, [](Check& c) {
    for (int v = 0; v < 8; ++v) {
      const AdderInputs in{(v & 1) != 0, (v & 2) != 0, (v & 4) != 0};
      const auto r = simulate(build_one_bit_adder({1.0, 0.0}, in));
      const int total = int(in.a) + int(in.b) + int(in.cin);
      c.expect(r.metrics.at("sum") == double(total % 2), "sum for input " + std::to_string(v));
      c.expect(r.metrics.at("cout") == double(total / 2), "cout for input " + std::to_string(v));
    }
    const double near_xor = simulate(build_one_bit_adder({1.0, 0.0})).metrics.at("sum_delivery");
    const double far_xor = simulate(build_one_bit_adder({-1.0, 0.0})).metrics.at("sum_delivery");
    c.near(near_xor, 7.2361, 1e-4, "sum delivery at (+1,0)");
    c.near(far_xor, 9.2361, 1e-4, "sum delivery at (-1,0)");
    c.near(far_xor - near_xor, 2.0, 1e-9, "shift");
  });

  criterion("AC4", "10x faster cache gives < 2x faster access", 0.0, [](Check& c) {
    const double slow = simulate(build_cache_scenario(0.5, 1.0)).metrics.at("apparent_access_core0");
    const double fast = simulate(build_cache_scenario(0.5, 0.1)).metrics.at("apparent_access_core0");
    c.near(slow / fast, 1.5944, 1e-4, "improvement factor");
    c.expect(slow / fast < 2.0, "factor < 2");
    const double zero = simulate(build_cache_scenario(0.5, 0.0)).metrics.at("apparent_access_core0");
    c.expect(zero == 2.0 * std::hypot(0.5, 0.5), "t_p = 0 gives exactly 2 T_t");
  });

  criterion("AC5", "bus payload fraction below 10% for 8 senders", 0.0, [](Check& c) {
    const auto r = simulate(build_bus_scenario(8, 0.1, 1.0));
    const double f = r.metrics.at("bus_payload_fraction");
    c.expect(f < 0.10, "payload fraction < 0.10");
    c.near(f, 0.010840108401084013, 1e-12, "frozen payload fraction");
    const std::array<double, 8> frozen{3.1, 7.2, 13.3, 21.4, 31.5, 43.6, 57.7, 73.8};
    for (std::size_t k = 0; k < 8; ++k) {
      c.near(r.metrics.at("delivery_sender" + std::to_string(k + 1)), frozen[k], 1e-9, "delivery");
    }
  });

  criterion("AC6", "coordinator idle grows and efficiency drops with N", 0.0, [](Check& c) {
    double idle = -1.0;
    double eff = 2.0;
    for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
      const auto r = simulate(build_distributed_scenario(n, 0.1, 1.0, 0.1, 1.0));
      c.expect(r.metrics.at("coordinator_idle") > idle, "idle strictly increasing at N=" + std::to_string(n));
      c.expect(r.metrics.at("efficiency") < eff, "efficiency strictly decreasing at N=" + std::to_string(n));
      idle = r.metrics.at("coordinator_idle");
      eff = r.metrics.at("efficiency");
      if (n == 2) c.near(eff, 0.12579, 1e-4, "efficiency at N=2");
    }
  });

  criterion("AC7", "payload fractions inferred from measured speedups", 0.0, [](Check& c) {
    c.near(infer_payload_fraction(3.01, 4.0), 0.890366, 1e-5, "f(3.01)");
    c.near(infer_payload_fraction(3.42, 4.0), 0.943469, 1e-5, "f(3.42)");
    for (double s : {3.01, 3.42}) {
      const double f = infer_payload_fraction(s, 4.0);
      c.expect(std::fabs(speedup_for_operand_ratio(f, 4.0) - s) < 1e-12, "round trip");
    }
  });

  criterion("AC8", "efficiency surface limits, monotonicity and golden CSV", 0.0, [](Check& c) {
    for (double a : {0.0, 0.3, 0.999999}) c.expect(efficiency(1.0, a) == 1.0, "E(1, a) == 1");
    for (double n : {1.0, 7.0, 1e6}) c.expect(efficiency(n, 1.0) == 1.0, "E(n, 1) == 1");
    for (double a : {0.0, 0.5, 1.0 - 1e-7}) {
      double last = 2.0;
      for (double n = 1.0; n <= 1e6; n *= 3.0) {
        c.expect(efficiency(n, a) < last, "E strictly decreasing in n");
        last = efficiency(n, a);
      }
    }
    const std::array<double, 4> n{1, 10, 100, 1000};
    const std::array<double, 3> x{1e-7, 1e-4, 1e-2};
    c.expect(write_surface_csv(efficiency_surface(n, x)) == read_golden("sweep_4x3.csv"), "golden sweep CSV");
  });

  criterion("AC9", "ANN arrival skew, shared bus vs dedicated links", 0.0, [](Check& c) {
    const auto s = simulate(build_ann_layer_scenario(3, 1.0, 0.1, false));
    const auto d = simulate(build_ann_layer_scenario(3, 1.0, 0.1, true));
    const std::array<double, 3> frozen{4.1, 8.2, 14.3};
    for (std::size_t k = 0; k < 3; ++k) {
      c.near(s.metrics.at("arrival_neuron" + std::to_string(k + 1)), frozen[k], 1e-9, "shared arrival");
    }
    c.near(s.metrics.at("skew"), 10.2, 1e-9, "shared skew");
    c.near(d.metrics.at("skew"), 2.0, 1e-9, "dedicated skew");
    for (std::size_t n = 1; n <= 16; ++n) {
      const double ss = simulate(build_ann_layer_scenario(n, 1.0, 0.1, false)).metrics.at("skew");
      const double ds = simulate(build_ann_layer_scenario(n, 1.0, 0.1, true)).metrics.at("skew");
      c.expect(ss >= ds, "shared >= dedicated at N=" + std::to_string(n));
    }
  });

  criterion("AC10", "determinism and exact tiling over randomized builders", 60.0, [](Check& c) {
    std::mt19937 rng(99);
    auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto count = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    for (int i = 0; i < 60; ++i) {
      std::vector<Scenario> all;
      std::vector<double> speeds(count(1, 4));
      for (auto& s : speeds) s = real(0.1, 4.0);
      all.push_back(build_observer_chain(real(0.01, 5.0), real(0.0, 10.0), speeds));
      all.push_back(build_one_bit_adder({real(-3, 3), real(-2, 2)}, AdderInputs{count(0, 1) == 1, count(0, 1) == 1,
                                                                              count(0, 1) == 1}));
      all.push_back(build_bus_scenario(count(1, 12), real(0, 1), real(0, 3)));
      all.push_back(build_distributed_scenario(count(1, 12), real(0, 1), real(0, 3), real(0, 1), real(0, 2)));
      all.push_back(build_cache_scenario(real(0.01, 3), real(0, 2)));
      all.push_back(build_ann_layer_scenario(count(1, 12), real(0, 2), real(0, 1), count(0, 1) == 1));
      for (const auto& s : all) {
        const auto a = run(s);
        const auto b = run(s);
        c.expect(write_trace_csv(a) == write_trace_csv(b), s.name + ": traces differ between runs");
        const std::string v = oracle::tiling_violation(a);
        c.expect(v.empty(), s.name + ": " + v);
      }
    }
  });

  const double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
  std::printf("acceptance: %d failure(s), %.3f s total\n", failures, total);
  return failures == 0 ? 0 : 1;
}
