#pragma once

#include <string>

namespace snn {

/// Physical dimension of a config quantity. Every physical constant in a
/// config file carries an explicit unit suffix (e.g. `4nA`, `100ms`, `-70mV`)
/// and is checked against the dimension its key expects.
enum class Dimension {
  kDimensionless,
  kCurrent,      // amperes
  kVoltage,      // volts
  kTime,         // seconds
  kCapacitance,  // farads
  kConductance,  // siemens
};

const char* dimension_name(Dimension d);

/// Parse "4nA" / "-70mV" / "0.1e-3s" / "2.5" into an SI value.
/// Throws ConfigError when the suffix is unknown or belongs to a different
/// dimension, or when a dimensioned key is given a bare number (and vice
/// versa). `context` names the config key for the error message.
double parse_quantity(const std::string& text, Dimension dim, const std::string& context);

/// Format an SI value with its base-unit suffix using round-trip precision,
/// so that echoed configs reparse to bit-identical doubles.
std::string format_quantity(double value, Dimension dim);

}  // namespace snn
