#pragma once

#include <stdexcept>
#include <string>

namespace flatheat {

// Invalid run parameters (bad Gevrey order, bad truncation, malformed config file).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An intermediate quantity left the representable range of binary64.
struct NumericRangeError : std::runtime_error {
  explicit NumericRangeError(const std::string& what) : std::runtime_error(what) {}
};

// The finite-difference solver produced a non-finite iterate.
struct InstabilityError : std::runtime_error {
  InstabilityError(const std::string& what, long step) : std::runtime_error(what), step_index(step) {}
  long step_index;
};

}  // namespace flatheat
