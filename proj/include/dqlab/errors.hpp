#pragma once

#include <stdexcept>
#include <string>

namespace dqlab {

// Bad user input: invalid physics parameters, malformed configs, contract
// violations on operation preconditions. Maps to CLI exit status 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid scenario/configuration values (step sizes, negative durations).
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(const std::string& what) : ValidationError(what) {}
};

// Numerical failure: eigensolver non-convergence, non-convergent
// extrapolation tableaus, file write failures. Maps to CLI exit status 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dqlab
