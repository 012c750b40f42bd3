#pragma once

#include <optional>

namespace tsim {

// A position whose coordinates are already expressed in time units
// (distance along the wiring divided by the interaction speed).
struct TimePoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const TimePoint&, const TimePoint&) = default;
};

bool is_finite(TimePoint p) noexcept;

// Dimensionless multiplier of a scenario's unit interaction speed.
class SpeedFactor {
 public:
  explicit SpeedFactor(double value);

  double value() const noexcept { return value_; }

  friend bool operator==(const SpeedFactor&, const SpeedFactor&) = default;

 private:
  double value_;
};

struct ApparentTime {
  double t_p = 0.0;          // physical processing time
  double t_t = 0.0;          // transfer time
  std::optional<double> r;   // t_t / t_p, absent when t_p == 0
  double t_a = 0.0;          // apparent time
};

// distance / interaction_speed. Throws DomainError for distance < 0 or speed <= 0.
double to_time_coordinates(double distance, double interaction_speed);

// Euclidean distance between two time-space points, divided by the speed factor.
double transfer_time(TimePoint a, TimePoint b, SpeedFactor speed);

// Two-stage event seen from the observer: source processes for t_p, the
// signal travels t_t, the observer processes for another t_p. The result
// vector runs from the origin event to (t_t, 2*t_p + t_t), so
//   t_a = sqrt(t_t^2 + (2*t_p + t_t)^2).
// Throws DegenerateInputError when both inputs are zero.
ApparentTime apparent_time(double t_p, double t_t);

// t_a / t_p as a function of r = t_t / t_p: sqrt(r^2 + (2 + r)^2).
double apparent_time_ratio(double r);

}  // namespace tsim
