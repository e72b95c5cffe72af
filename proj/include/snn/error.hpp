#pragma once

#include <stdexcept>
#include <string>

namespace snn {

/// Invalid configuration: bad key, missing field, out-of-range value.
/// Messages carry the offending field path (e.g. "learning.mu").
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed dataset input (row number included in the message).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite state or other fault inside a running simulation.
struct SimulationFault : std::runtime_error {
  explicit SimulationFault(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace snn
