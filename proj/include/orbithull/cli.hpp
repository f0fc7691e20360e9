#pragma once

#include <string>
#include <vector>

namespace orbithull::cli {

/// Exit codes: affirmative verdict, negative verdict, input or precondition
/// error.
enum Exit : int { kAffirmative = 0, kNegative = 1, kError = 2 };

struct Outcome {
  int exit = kError;
  std::string report;      // single JSON document (empty only for --help)
  std::string diagnostic;  // human-readable message for standard error
  std::string out_path;    // --out target, when given
};

/// Runs one command line (program name excluded). Never throws. When --out
/// is given the report is also written to that file.
Outcome run(const std::vector<std::string>& args);

}  // namespace orbithull::cli
