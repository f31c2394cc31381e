#pragma once

#include <stdexcept>
#include <string>

namespace greenpc {

/// Bad or inconsistent user input (config files, CLI arguments).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The model has no equilibrium for the requested parameters
/// (system load too high, non-positive power denominator, missing root).
class InfeasibleError : public std::runtime_error {
public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numeric procedure failed (bracketing, tolerance, cross-check mismatch).
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace greenpc
