#include "snn/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "snn/error.hpp"

namespace snn {

void NormalizationStats::validate() const {
  if (min.size() != max.size()) {
    throw ConfigError("normalization stats: min/max length mismatch");
  }
  for (std::size_t f = 0; f < min.size(); ++f) {
    if (!(max[f] >= min[f])) {
      throw ConfigError("normalization stats: max < min for feature " + std::to_string(f));
    }
  }
}

const char* linear_sensor_name(LinearSensor s) {
  switch (s) {
    case LinearSensor::kHigh: return "high";
    case LinearSensor::kLow: return "low";
    case LinearSensor::kIntermediate: return "intermediate";
    case LinearSensor::kExtreme: return "extreme";
  }
  return "?";
}

LinearSensor linear_sensor_from_name(const std::string& name) {
  if (name == "high") return LinearSensor::kHigh;
  if (name == "low") return LinearSensor::kLow;
  if (name == "intermediate") return LinearSensor::kIntermediate;
  if (name == "extreme") return LinearSensor::kExtreme;
  throw ConfigError("encoder.sensors: unknown sensor '" + name +
                    "' (expected high|low|intermediate|extreme)");
}

int EncoderConfig::transforms_per_feature() const {
  return mode == Mode::kGaussian ? rbf_count : static_cast<int>(sensors.size());
}

double EncoderConfig::sigma() const {
  if (rbf_sigma > 0) return rbf_sigma;
  return 1.0 / (2.0 * (rbf_count - 1));
}

void EncoderConfig::validate() const {
  if (!(i_max > 0)) throw ConfigError("encoder.i_max: must be > 0");
  if (mode == Mode::kGaussian) {
    if (rbf_count < 2) throw ConfigError("encoder.rbf_count: need at least 2 sensors");
    if (rbf_sigma < 0) throw ConfigError("encoder.rbf_sigma: must be > 0 (or 0 for default)");
  } else {
    if (sensors.empty()) throw ConfigError("encoder.sensors: need a non-empty sensor list");
  }
}

double normalize(double raw, const NormalizationStats& stats, std::size_t feature) {
  if (feature >= stats.feature_count()) {
    throw std::out_of_range("normalize: feature index " + std::to_string(feature) +
                            " outside stats (" + std::to_string(stats.feature_count()) + ")");
  }
  const double lo = stats.min[feature];
  const double hi = stats.max[feature];
  if (hi == lo) return 0.0;  // constant feature carries no information
  return (raw - lo) / (hi - lo);
}

namespace {

constexpr double kClampTolerance = 1e-9;

double checked_unit_range(double x) {
  if (x < 0.0) {
    if (x < -kClampTolerance) {
      throw std::invalid_argument("encode: normalized value " + std::to_string(x) +
                                  " outside [0,1]");
    }
    return 0.0;
  }
  if (x > 1.0) {
    if (x > 1.0 + kClampTolerance) {
      throw std::invalid_argument("encode: normalized value " + std::to_string(x) +
                                  " outside [0,1]");
    }
    return 1.0;
  }
  return x;
}

double linear_response(LinearSensor s, double x, double i_max) {
  switch (s) {
    case LinearSensor::kHigh: return i_max * x;
    case LinearSensor::kLow: return i_max * (1.0 - x);
    case LinearSensor::kIntermediate: return i_max * (1.0 - 2.0 * std::abs(x - 0.5));
    case LinearSensor::kExtreme: return i_max * 2.0 * std::abs(x - 0.5);
  }
  return 0.0;
}

}  // namespace

std::vector<double> encode_gaussian(double x, const EncoderConfig& config) {
  x = checked_unit_range(x);
  const int t = config.rbf_count;
  const double sigma = config.sigma();
  std::vector<double> currents(static_cast<std::size_t>(t));
  for (int j = 0; j < t; ++j) {
    const double mu = static_cast<double>(j) / (t - 1);
    const double dev = x - mu;
    currents[static_cast<std::size_t>(j)] =
        config.i_max * std::exp(-dev * dev / (2.0 * sigma * sigma));
  }
  return currents;
}

std::vector<double> encode_linear(double x, const EncoderConfig& config) {
  x = checked_unit_range(x);
  std::vector<double> currents;
  currents.reserve(config.sensors.size());
  for (LinearSensor s : config.sensors) {
    currents.push_back(linear_response(s, x, config.i_max));
  }
  return currents;
}

std::vector<double> encode_feature(double x, const EncoderConfig& config) {
  return config.mode == EncoderConfig::Mode::kGaussian ? encode_gaussian(x, config)
                                                       : encode_linear(x, config);
}

std::vector<double> encode_sample(std::span<const double> raw,
                                  const NormalizationStats& stats,
                                  const EncoderConfig& config) {
  std::vector<double> currents;
  currents.reserve(raw.size() * static_cast<std::size_t>(config.transforms_per_feature()));
  for (std::size_t f = 0; f < raw.size(); ++f) {
    const auto bank = encode_feature(normalize(raw[f], stats, f), config);
    currents.insert(currents.end(), bank.begin(), bank.end());
  }
  return currents;
}

namespace {

void append_clipped(std::vector<Interval>& out, double lo, double hi) {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (hi > lo) out.push_back({lo, hi});
}

// Active interval(s) of one sensor: {x in [0,1] : current(x) > i_th}.
std::vector<Interval> active_intervals(LinearSensor s, double ratio) {
  std::vector<Interval> out;
  switch (s) {
    case LinearSensor::kHigh:  // i_max * x > i_th
      append_clipped(out, ratio, 1.0);
      break;
    case LinearSensor::kLow:  // i_max * (1-x) > i_th
      append_clipped(out, 0.0, 1.0 - ratio);
      break;
    case LinearSensor::kIntermediate:  // |x - 0.5| < (1-ratio)/2
      append_clipped(out, ratio / 2.0, 1.0 - ratio / 2.0);
      break;
    case LinearSensor::kExtreme:  // |x - 0.5| > ratio/2
      append_clipped(out, 0.0, 0.5 - ratio / 2.0);
      append_clipped(out, 0.5 + ratio / 2.0, 1.0);
      break;
  }
  return out;
}

}  // namespace

CoverageReport coverage_analysis(const EncoderConfig& config, double i_th) {
  config.validate();
  if (i_th < 0) throw ConfigError("coverage_analysis: i_th must be >= 0");
  const double ratio = i_th / config.i_max;

  CoverageReport report;
  if (config.mode == EncoderConfig::Mode::kLinear) {
    for (LinearSensor s : config.sensors) {
      report.sensors.push_back({linear_sensor_name(s), active_intervals(s, ratio)});
    }
  } else {
    const int t = config.rbf_count;
    const double sigma = config.sigma();
    for (int j = 0; j < t; ++j) {
      const double mu = static_cast<double>(j) / (t - 1);
      SensorCoverage cov{"rbf" + std::to_string(j + 1), {}};
      if (ratio < 1.0) {
        // exp(-d^2 / 2 sigma^2) > ratio  <=>  |d| < sigma * sqrt(2 ln(1/ratio))
        if (ratio <= 0.0) {
          append_clipped(cov.active, 0.0, 1.0);  // full support
        } else {
          const double half = sigma * std::sqrt(2.0 * std::log(1.0 / ratio));
          append_clipped(cov.active, mu - half, mu + half);
        }
      }
      report.sensors.push_back(std::move(cov));
    }
  }

  // Sweep the union of endpoints; between consecutive endpoints the active
  // count is constant.
  std::vector<double> edges{0.0, 1.0};
  for (const auto& s : report.sensors) {
    for (const auto& iv : s.active) {
      edges.push_back(iv.lo);
      edges.push_back(iv.hi);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  double gap = 0.0, overlap = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double lo = edges[k], hi = edges[k + 1];
    if (hi <= lo || hi <= 0.0 || lo >= 1.0) continue;
    const double mid = 0.5 * (lo + hi);
    int count = 0;
    for (const auto& s : report.sensors) {
      for (const auto& iv : s.active) {
        if (mid > iv.lo && mid < iv.hi) {
          ++count;
          break;
        }
      }
    }
    if (count == 0) gap += hi - lo;
    if (count >= 2) overlap += hi - lo;
  }
  report.gap = gap;
  report.covered = 1.0 - gap;  // partition of [0,1] by construction
  report.overlap = overlap;
  return report;
}

}  // namespace snn
