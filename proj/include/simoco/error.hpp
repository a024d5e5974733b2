#pragma once

#include <stdexcept>
#include <string>

namespace simoco {

// Raised for contract violations inside the library (bad inputs, stale
// routes, non-converging tours). Config parsing uses ConfigError.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace simoco
