#pragma once

#include <span>
#include <string>
#include <vector>

namespace snn {

/// Per-feature min/max over the *full* dataset (normalization is computed
/// before any train/test split).
struct NormalizationStats {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t feature_count() const { return min.size(); }
  void validate() const;  // max >= min per feature
};

/// The four linear level sensors. High responds to large feature values,
/// Low to small ones, Intermediate near the middle, Extreme away from it.
enum class LinearSensor { kHigh, kLow, kIntermediate, kExtreme };

const char* linear_sensor_name(LinearSensor s);
LinearSensor linear_sensor_from_name(const std::string& name);

/// How one normalized feature is fanned out into a bank of constant input
/// currents: either T Gaussian receptive fields with centers evenly spaced
/// over [0,1], or a subset of the linear sensors.
struct EncoderConfig {
  enum class Mode { kGaussian, kLinear };

  Mode mode = Mode::kLinear;
  int rbf_count = 0;        // Gaussian: T >= 2
  double rbf_sigma = 0.0;   // 0 = default width, half the inter-center spacing
  std::vector<LinearSensor> sensors;  // Linear: non-empty, ordered
  double i_max = 4e-9;      // peak sensor current, amperes

  int transforms_per_feature() const;
  double sigma() const;     // resolved RBF width
  void validate() const;
};

/// (z - min) / (max - min); a constant feature (max == min) maps to 0.
double normalize(double raw, const NormalizationStats& stats, std::size_t feature);

/// One feature -> T currents, I_j = I_max * exp(-(x - mu_j)^2 / (2 sigma^2))
/// with centers mu_j = (j-1)/(T-1). x must lie in [0,1]; values within 1e-9
/// outside are clamped, anything further is rejected.
std::vector<double> encode_gaussian(double x, const EncoderConfig& config);

/// One feature -> one current per configured linear sensor:
/// High = I_max*x, Low = I_max*(1-x), Intermediate = I_max*(1-2|x-0.5|),
/// Extreme = I_max*2|x-0.5|.
std::vector<double> encode_linear(double x, const EncoderConfig& config);

/// Dispatch on config.mode.
std::vector<double> encode_feature(double x, const EncoderConfig& config);

/// Whole sample -> F*T input currents (feature-major order).
std::vector<double> encode_sample(std::span<const double> raw,
                                  const NormalizationStats& stats,
                                  const EncoderConfig& config);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct SensorCoverage {
  std::string sensor;              // "high", "rbf3", ...
  std::vector<Interval> active;    // where the sensor's current strictly exceeds i_th
};

/// Threshold-filter analysis of a sensor bank over the normalized input
/// range: which sub-intervals of [0,1] each sensor can excite (current
/// strictly above i_th), how much of the range no sensor covers (gap), and
/// how much is covered by two or more (overlap). covered == 1 - gap by
/// construction.
struct CoverageReport {
  std::vector<SensorCoverage> sensors;
  double gap = 0.0;
  double covered = 0.0;
  double overlap = 0.0;
};

CoverageReport coverage_analysis(const EncoderConfig& config, double i_th);

}  // namespace snn
