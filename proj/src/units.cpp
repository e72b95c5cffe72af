#include "snn/units.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "snn/error.hpp"

namespace snn {
namespace {

struct Suffix {
  Dimension dim;
  double scale;
};

const std::map<std::string, Suffix>& suffix_table() {
  static const std::map<std::string, Suffix> table = {
      {"A", {Dimension::kCurrent, 1.0}},    {"mA", {Dimension::kCurrent, 1e-3}},
      {"uA", {Dimension::kCurrent, 1e-6}},  {"nA", {Dimension::kCurrent, 1e-9}},
      {"pA", {Dimension::kCurrent, 1e-12}}, {"V", {Dimension::kVoltage, 1.0}},
      {"mV", {Dimension::kVoltage, 1e-3}},  {"uV", {Dimension::kVoltage, 1e-6}},
      {"s", {Dimension::kTime, 1.0}},       {"ms", {Dimension::kTime, 1e-3}},
      {"us", {Dimension::kTime, 1e-6}},     {"ns", {Dimension::kTime, 1e-9}},
      {"F", {Dimension::kCapacitance, 1.0}},  {"uF", {Dimension::kCapacitance, 1e-6}},
      {"nF", {Dimension::kCapacitance, 1e-9}}, {"pF", {Dimension::kCapacitance, 1e-12}},
      {"S", {Dimension::kConductance, 1.0}},  {"mS", {Dimension::kConductance, 1e-3}},
      {"uS", {Dimension::kConductance, 1e-6}}, {"nS", {Dimension::kConductance, 1e-9}},
      {"pS", {Dimension::kConductance, 1e-12}},
  };
  return table;
}

}  // namespace

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::kDimensionless: return "dimensionless";
    case Dimension::kCurrent: return "current";
    case Dimension::kVoltage: return "voltage";
    case Dimension::kTime: return "time";
    case Dimension::kCapacitance: return "capacitance";
    case Dimension::kConductance: return "conductance";
  }
  return "?";
}

double parse_quantity(const std::string& text, Dimension dim, const std::string& context) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double magnitude = std::strtod(begin, &end);
  if (end == begin) {
    throw ConfigError(context + ": cannot parse number from '" + text + "'");
  }
  std::string suffix(end);
  while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front()))) {
    suffix.erase(suffix.begin());
  }
  while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.back()))) {
    suffix.pop_back();
  }
  if (suffix.empty()) {
    if (dim != Dimension::kDimensionless) {
      throw ConfigError(context + ": expected a " + std::string(dimension_name(dim)) +
                        " with unit suffix, got bare number '" + text + "'");
    }
    return magnitude;
  }
  const auto it = suffix_table().find(suffix);
  if (it == suffix_table().end()) {
    throw ConfigError(context + ": unknown unit suffix '" + suffix + "' in '" + text + "'");
  }
  if (it->second.dim != dim) {
    throw ConfigError(context + ": expected " + dimension_name(dim) + ", got " +
                      dimension_name(it->second.dim) + " ('" + text + "')");
  }
  return magnitude * it->second.scale;
}

std::string format_quantity(double value, Dimension dim) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string out(buf);
  switch (dim) {
    case Dimension::kDimensionless: break;
    case Dimension::kCurrent: out += "A"; break;
    case Dimension::kVoltage: out += "V"; break;
    case Dimension::kTime: out += "s"; break;
    case Dimension::kCapacitance: out += "F"; break;
    case Dimension::kConductance: out += "S"; break;
  }
  return out;
}

}  // namespace snn
