#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catenoid {

// Dispatches one CLI invocation. args excludes the program name. Returns the
// process exit code: 0 on success, 1 on domain errors, 2 on parse errors
// (expression syntax or command-line usage).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catenoid
