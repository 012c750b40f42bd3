#include "tsim/analytic.hpp"

#include <cmath>
#include <cstddef>

#include <fmt/format.h>

#include "tsim/error.hpp"

namespace tsim {

namespace {

void check_fraction(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(fmt::format("{} must lie in [0, 1], got {}", what, v));
}

void check_ratio(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError(fmt::format("operand ratio must be > 0, got {}", r));
}

void check_count(double n) {
  if (!(n >= 1.0) || !std::isfinite(n)) throw DomainError(fmt::format("processor count must be >= 1, got {}", n));
}

void check_grid(std::span<const double> n_values, std::span<const double> one_minus_alpha_values) {
  if (n_values.empty() || one_minus_alpha_values.empty()) throw DomainError("efficiency surface needs non-empty axes");
  for (double n : n_values) check_count(n);
  for (double x : one_minus_alpha_values) check_fraction(x, "one_minus_alpha");
}

}  // namespace

double speedup_for_operand_ratio(double f, double r) {
  check_fraction(f, "payload fraction");
  check_ratio(r);
  return 1.0 / ((1.0 - f) + f / r);
}

double infer_payload_fraction(double speedup, double r) {
  check_ratio(r);
  const double lo = std::fmin(1.0, r);
  const double hi = std::fmax(1.0, r);
  if (!(speedup >= lo && speedup <= hi)) {
    throw ModelViolationError(fmt::format("speedup {} is outside [{}, {}]", speedup, lo, hi));
  }
  if (r == 1.0) {
    if (speedup != 1.0) throw ModelViolationError("r = 1 admits only speedup 1");
    return 0.0;
  }
  return (1.0 - 1.0 / speedup) / (1.0 - 1.0 / r);
}

PrecisionModel precision_model(double f, double r) { return PrecisionModel{f, r, speedup_for_operand_ratio(f, r)}; }

double efficiency(double n, double alpha) {
  check_count(n);
  check_fraction(alpha, "alpha");
  return 1.0 / (alpha + (1.0 - alpha) * n);
}

std::vector<EfficiencyPoint> efficiency_surface_serial(std::span<const double> n_values,
                                                       std::span<const double> one_minus_alpha_values) {
  check_grid(n_values, one_minus_alpha_values);
  std::vector<EfficiencyPoint> out;
  out.reserve(n_values.size() * one_minus_alpha_values.size());
  for (double x : one_minus_alpha_values) {
    for (double n : n_values) {
      const double alpha = 1.0 - x;
      out.push_back(EfficiencyPoint{n, alpha, efficiency(n, alpha)});
    }
  }
  return out;
}

std::vector<EfficiencyPoint> efficiency_surface(std::span<const double> n_values,
                                                std::span<const double> one_minus_alpha_values) {
  check_grid(n_values, one_minus_alpha_values);
  const std::size_t cols = n_values.size();
  const std::size_t total = cols * one_minus_alpha_values.size();
  std::vector<EfficiencyPoint> out(total);
  const auto count = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double n = n_values[k % cols];
    const double alpha = 1.0 - one_minus_alpha_values[k / cols];
    out[k] = EfficiencyPoint{n, alpha, 1.0 / (alpha + (1.0 - alpha) * n)};
  }
  return out;
}

}  // namespace tsim
