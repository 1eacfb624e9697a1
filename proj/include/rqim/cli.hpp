#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rqim::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoOrFormat = 2,
  kCapacityOrParameter = 3,
  kDetected = 4,  // tampered / watermark detected, only under --strict-exit
};

/// Runs one command line (without the program name). Human-readable output
/// goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rqim::cli
