#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace softcore::cli {

/// Exit statuses of run().
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

/// Runs one command line (args excludes the program name). Data goes to
/// `out` unless an output file applies; failures are reported on `err` as a
/// one-line JSON record {"error": {"kind", "message", "command"}}.
///
/// The SOFTCORE_OUTPUT_DIR environment variable, when set, is the directory
/// for relative --output paths and for the default file <command>.<format>.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace softcore::cli
