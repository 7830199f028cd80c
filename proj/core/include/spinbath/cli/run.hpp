#pragma once

#include <string>
#include <vector>

#include "spinbath/cli/config.hpp"
#include "spinbath/cli/envelope.hpp"

namespace spinbath::cli {

/// Dispatches a validated configuration to its module. Module errors propagate.
ResultEnvelope run(const RunConfig& config);

/// Full command-line entry: parse, run, write. Returns 0 on success, 2 for configuration
/// errors and 1 for module errors (reported on stderr and, for JSON output, in the
/// envelope diagnostics).
int main_entry(const std::vector<std::string>& args);

}  // namespace spinbath::cli
