#pragma once

#include <iosfwd>

namespace stagfv::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kCflViolation = 2, kTableMismatch = 3 };

/// Entry point of the `stagfv` tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stagfv::cli
