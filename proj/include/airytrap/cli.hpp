#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace airytrap {

/// Runs the airy-trap command line. args excludes the program name.
/// Returns 0 on success, 2 on a usage error, 1 on a computation error; the latter
/// writes {"error": <name>, "message": ...} to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Version string reported in manifests.
const char* code_version();

}  // namespace airytrap
