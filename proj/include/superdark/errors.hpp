#pragma once

#include <stdexcept>

namespace superdark {

// Base class for everything thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad inputs: malformed configuration, invalid geometry, mismatched dimensions.
struct usage_error : error {
  using error::error;
};
struct geometry_error : usage_error {
  using usage_error::usage_error;
};
struct singular_error : usage_error {
  using usage_error::usage_error;
};

// Numerical failures: lost accuracy, failed convergence, bad brackets.
struct numeric_error : error {
  using error::error;
};
struct accuracy_error : numeric_error {
  using numeric_error::numeric_error;
};
struct convergence_error : numeric_error {
  using numeric_error::numeric_error;
};
struct bracket_error : numeric_error {
  using numeric_error::numeric_error;
};

}  // namespace superdark
