#pragma once

#include <stdexcept>
#include <string>

namespace tlim {

// Invalid argument values, degenerate geometry, malformed states.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numeric procedure could not meet its accuracy contract
// (insufficient cutoff, quadrature non-convergence, too few samples).
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tlim
