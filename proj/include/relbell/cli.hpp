#pragma once

#include <string>
#include <vector>

namespace relbell {

/// Command-line entry point (arguments without the program name).
/// Exit codes: 0 success, 2 parse/usage error, 3 convergence refusal,
/// 4 internal-consistency or oracle failure, 1 unexpected failure.
int run_cli(const std::vector<std::string>& args);

} // namespace relbell
