#include <fmt/format.h>

#include "tsim/io.hpp"

namespace tsim {

std::string format_fixed9(double value) {
  std::string s = fmt::format("{:.9f}", value);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace tsim
