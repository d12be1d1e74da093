#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace slda::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kNotConverged = 3,
  kInfeasible = 4,
  kFoldTooSmall = 5,
  kDimensionMismatch = 6,
};

/// Runs one command line (without the program name), e.g.
/// {"fit", "--data", "train.csv", "--lambda", "0.3", "--out", "model.txt"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slda::cli
