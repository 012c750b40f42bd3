#pragma once

// Closed-form performance models: operand-length speedup and the parallel
// efficiency surface over processor count and non-payload fraction.

#include <span>
#include <vector>

namespace tsim {

struct PrecisionModel {
  double f = 0.0;        // payload-time fraction
  double r = 1.0;        // operand-length ratio
  double speedup = 1.0;
};

struct EfficiencyPoint {
  double n = 1.0;
  double alpha = 1.0;  // payload fraction; 1 - alpha is the non-payload part
  double e = 1.0;
};

// 1 / ((1 - f) + f / r): only the payload part scales with operand length.
double speedup_for_operand_ratio(double f, double r);

// Inverse of speedup_for_operand_ratio. Throws ModelViolationError when the
// speedup lies outside [1, r].
double infer_payload_fraction(double speedup, double r);

PrecisionModel precision_model(double f, double r);

// 1 / (alpha + (1 - alpha) * n)
double efficiency(double n, double alpha);

// Row-major grid: one row per one_minus_alpha value, n varying fastest.
// The OpenMP version and the serial reference return identical points.
std::vector<EfficiencyPoint> efficiency_surface(std::span<const double> n_values,
                                                std::span<const double> one_minus_alpha_values);
std::vector<EfficiencyPoint> efficiency_surface_serial(std::span<const double> n_values,
                                                       std::span<const double> one_minus_alpha_values);

}  // namespace tsim
