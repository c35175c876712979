#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entgeo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,       // bad arguments, expressions, files or grids
  kExitValidation = 3,  // input parsed but violates a state/model invariant
  kExitCap = 4,         // size cap exceeded
};

/// Runs one CLI invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entgeo::cli
