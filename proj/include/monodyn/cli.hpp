#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monodyn/report.hpp"

namespace monodyn {

/// Exit codes: 0 affirmative result, 1 negative or inconclusive result,
/// 2 usage error, 3 runtime error (bad input, failed precondition).
struct CommandResult {
  int exit_code = 0;
  /// JSON report with a "kind" tag; absent for usage errors and help.
  std::optional<Json> report;
  std::string out;
  std::string err;
};

/// Runs one command line (without the program name). Never throws; files
/// named by output options (PPM images) are written as a side effect.
CommandResult dispatch(const std::vector<std::string>& args);

}  // namespace monodyn
