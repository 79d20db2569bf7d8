#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "apchar/verification.hpp"

namespace apchar::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`.
/// 0 for a passing report, 1 otherwise.
int exit_code(const verify::Report& report) noexcept;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apchar::cli
