#pragma once

#include <string>
#include <vector>

namespace vexlab {

/// Entry point shared by the binary and the CLI tests. Returns the process
/// exit code: 0 success, 2 validation/usage error, 1 runtime failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace vexlab
