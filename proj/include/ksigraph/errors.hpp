#pragma once

#include <stdexcept>
#include <string>

namespace ksigraph {

// Malformed or unreadable input: edge lists, sample files, curve files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Valid input the mathematics cannot handle: degenerate samples,
// out-of-range inversion targets, size limits, non-convergence.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ksigraph
