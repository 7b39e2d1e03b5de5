#pragma once

#include <stdexcept>
#include <string>

namespace timedist {

// Invariant violated while constructing a domain value or parsing input.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Inconsistent or infeasible run configuration (planner/simulator level).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace timedist
