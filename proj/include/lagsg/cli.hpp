#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lagsg::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kDomainError = 3;

// Runs one subcommand. `args` excludes the program name. Reports go to `out`
// (or the configured output file); errors go to `err` as one JSON line
// {"error": kind, "message": text, "exit_code": n}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lagsg::cli
