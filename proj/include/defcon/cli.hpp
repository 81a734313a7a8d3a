#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace defcon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;           // usage, parse or precondition error
inline constexpr int kExitStrictConflict = 2;  // --strict and a conflict / no plan

/// Runs one invocation. `args` excludes the program name. Failures write a
/// single diagnostic line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace defcon::cli
