#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccloop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFails = 1;  // a checked property does not hold
inline constexpr int kExitUsage = 2;  // bad arguments or unreadable input

// Verbs: analyze, verify, check, subloop, quotient, semidirect, holomorph,
// search, paper-suite. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccloop::cli
