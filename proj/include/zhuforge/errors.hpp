#pragma once

#include <stdexcept>
#include <string>

namespace zhuforge {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exact answer needs structure data above the cutoff.
struct OutOfTruncation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input document; `pointer` names the offending field (JSON pointer syntax).
struct SchemaError : std::runtime_error {
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer(std::move(pointer)) {}
  std::string pointer;
};

}  // namespace zhuforge
