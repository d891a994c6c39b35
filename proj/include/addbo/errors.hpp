#pragma once

#include <stdexcept>
#include <string>

namespace addbo {

/// Caller supplied something outside an operation's domain (dimension
/// mismatch, empty group, out-of-range index, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A factorization or eigen-decomposition produced something unusable.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double jitter = 0.0)
      : std::runtime_error(what), jitter_(jitter) {}

  /// Diagonal jitter in effect when the failure was detected.
  double jitter() const noexcept { return jitter_; }

 private:
  double jitter_;
};

/// Invalid experiment or sampler configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Persisted artifact written under a different schema version.
class SchemaError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace addbo
