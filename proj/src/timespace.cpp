#include "tsim/timespace.hpp"

#include <cmath>
#include <string>

#include "tsim/error.hpp"

namespace tsim {

bool is_finite(TimePoint p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

SpeedFactor::SpeedFactor(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("speed factor must be finite and > 0, got " + std::to_string(value));
  }
}

double to_time_coordinates(double distance, double interaction_speed) {
  if (!(interaction_speed > 0.0) || !std::isfinite(interaction_speed)) {
    throw DomainError("interaction speed must be finite and > 0");
  }
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw DomainError("distance must be finite and >= 0");
  }
  return distance / interaction_speed;
}

double transfer_time(TimePoint a, TimePoint b, SpeedFactor speed) {
  if (!is_finite(a) || !is_finite(b)) {
    throw DomainError("time-space coordinates must be finite");
  }
  return std::hypot(b.x - a.x, b.y - a.y) / speed.value();
}

ApparentTime apparent_time(double t_p, double t_t) {
  if (!(t_p >= 0.0) || !(t_t >= 0.0) || !std::isfinite(t_p) || !std::isfinite(t_t)) {
    throw DomainError("processing and transfer times must be finite and >= 0");
  }
  if (t_p == 0.0 && t_t == 0.0) {
    throw DegenerateInputError("apparent_time(0, 0): no processing and no transfer");
  }
  ApparentTime out;
  out.t_p = t_p;
  out.t_t = t_t;
  if (t_p > 0.0) out.r = t_t / t_p;
  out.t_a = std::hypot(t_t, 2.0 * t_p + t_t);
  return out;
}

double apparent_time_ratio(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("ratio R must be finite and >= 0");
  }
  return std::hypot(r, 2.0 + r);
}

}  // namespace tsim
