#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noksurf::cli {

/// Exit codes: 0 success, 2 bad input or unsupported model, 3 a theorem or
/// oracle check failed.
enum ExitCode { kOk = 0, kInputFailure = 2, kCheckFailure = 3 };

int exit_code_for(const std::exception& e);

/// `args` excludes the program name:
///   <command> <input.json> [--format json|text] [--svg out.svg] [--budget N]
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noksurf::cli
