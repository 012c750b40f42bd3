#pragma once

#include <ostream>

namespace tsim {

// Entry point of the `tsim` executable. Returns 0 on success, 1 on a usage
// error and 2 on a scenario, simulation or file error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tsim
