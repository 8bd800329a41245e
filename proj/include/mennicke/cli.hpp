#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mennicke/error.hpp"

namespace mennicke::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kMalformedInput = 2,
  kOracleExhausted = 3,
};

/// Exit status for a library error.
int exit_code_for(ErrorCode code);

/// Runs one command; `args` excludes the program name. Results go to `out`
/// (or --out), errors to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mennicke::cli
