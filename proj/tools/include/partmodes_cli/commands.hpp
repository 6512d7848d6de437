#pragma once

#include <ostream>

namespace partmodes::cli {

/// Entry point of the `partmodes` tool. Returns the process exit status:
/// 0 on success, 1 on a runtime failure, CLI11's code on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace partmodes::cli
