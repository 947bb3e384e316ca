#pragma once

#include <stdexcept>
#include <string>

namespace glmsel {

// Bad user input: malformed CSV, invalid responses, dimension mismatches.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration: unknown keys, unparseable values, missing files.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: rank-deficient designs, indefinite matrices, empty selections.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace glmsel
