#pragma once

#include <stdexcept>
#include <string>

namespace adagio {

// File and format problems: missing files, bad magic numbers, unparseable
// fields, truncation. The CLI maps these to the input-error exit code.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: non-finite inputs to a decomposition, singular solves
// outside the documented fallbacks. Mapped to a distinct exit code.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adagio
