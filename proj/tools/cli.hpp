#pragma once

#include <iosfwd>

namespace ksigraph::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kDomainError = 2,
  kBoundViolation = 3,
};

// Entry point of the ksigraph command; `out` receives what the binary prints
// on stdout, `err` diagnostics.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ksigraph::cli
