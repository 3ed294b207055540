#pragma once

#include <stdexcept>
#include <string>

namespace anchorclust {

// Invalid configuration: bad hyperparameters, shape mismatches, unsatisfiable
// requests.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be read, written, or parsed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values or a failed factorization at runtime.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace anchorclust
