#pragma once

#include <stdexcept>
#include <string>

namespace ggm {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter outside the model's domain (k < 2, theta <= 0, ...).
struct domain_error : error {
  using error::error;
};

/// Non-finite intermediate or other floating-point breakdown.
struct numeric_error : error {
  using error::error;
};

/// Requested computation exceeds a hard size cap (e.g. marginal enumeration).
struct size_error : error {
  using error::error;
};

/// Internal consistency violation (missed bracket, Descartes parity breach).
/// These indicate a solver bug, never silent truncation.
struct internal_error : error {
  using error::error;
};

}  // namespace ggm
