#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lambert::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kEmptyResult = 2,
  kNumericalFailure = 3,
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lambert::cli
