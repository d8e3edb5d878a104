#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mackey::cli {

/// Process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 2,        // malformed arguments or input files
  exit_domain = 3,       // input outside the supported domain, or a budget hit
  exit_discrepancy = 4,  // two computations disagree, or a scanned property fails
};

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mackey::cli
