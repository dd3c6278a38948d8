#pragma once

#include <stdexcept>

namespace ratsel {

/// Invalid user-supplied configuration (ranges, architecture, agent knobs, config files).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A vector or matrix whose shape does not match what the callee expects.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed data handed to an operation: non-reciprocal AHP matrices, empty traces, bad trace lines.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ratsel
