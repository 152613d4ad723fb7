#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace probative::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kValidation = 2,
  kInference = 3,
};

/// Runs one invocation. `args` excludes the program name, e.g.
/// {"lr", "--fixture", "fig3_island", "--evidence", "E=match", "--hypothesis", "H"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Four significant figures, as shown to people ("14.29", "0.09091", "INFINITE").
std::string format_sig4(double value);

}  // namespace probative::cli
