#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "snn/config.hpp"
#include "snn/dataset.hpp"
#include "snn/fastval.hpp"
#include "snn/network.hpp"

namespace snn {

/// Loaded dataset plus everything derived from the experiment config that
/// is shared across runs: normalization stats (full dataset), the resolved
/// topology, and the encoded input currents of every sample.
struct ExperimentContext {
  ExperimentConfig config;
  Dataset dataset;
  NormalizationStats stats;
  double i_th = 0.0;  // input-layer threshold current
  std::vector<std::vector<double>> currents;  // encoded full dataset
  std::vector<int> labels;

  std::size_t input_count() const { return config.network.input_count(dataset.feature_count); }
};

ExperimentContext prepare(const ExperimentConfig& config);

struct RunOutcome {
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  std::size_t correct = 0, wrong = 0, none = 0, multi = 0;
};

struct BenchResult {
  std::vector<RunOutcome> runs;
  double mean_accuracy = 0.0;
  bool expectation_checked = false;
  bool expectation_met = true;
  double seconds = 0.0;
};

/// `run.count` independent train+test cycles; run k draws its split and
/// initial weights from derive_seed(master, k). Runs execute on the worker
/// pool; reported order is deterministic.
BenchResult run_bench(const ExperimentContext& ctx);

struct DesignCurvePoint {
  double ratio = 0.0;  // i_th / i_max
  double mean_accuracy = 0.0;
};

/// Sweep i_th/i_max by varying i_max, re-running the whole benchmark at
/// each step.
std::vector<DesignCurvePoint> run_design_curve(const ExperimentConfig& config, double ratio_lo,
                                               double ratio_hi, int steps);

struct EvolutionResult {
  std::vector<double> merit;       // index e = after e epochs (0 = untrained)
  std::vector<double> robustness;  // same indexing, shared normalizer
  double r_normalizer = 0.0;
  double final_accuracy = 0.0;     // transient test of the final weights
  double merit_accuracy_gap = 0.0;
  WeightMatrix system_a;  // weights after 1 epoch
  WeightMatrix system_b;  // weights after the last epoch
};

/// Single seeded training run with per-epoch current-space snapshots.
EvolutionResult run_evolution(const ExperimentContext& ctx);

struct NoiseStudyResult {
  std::vector<NoisePoint> system_a;
  std::vector<NoisePoint> system_b;
  double crossing_a = 0.0;  // sigma where mean merit crosses 90 (interpolated)
  double crossing_b = 0.0;
  std::vector<std::pair<double, double>> correlation_pairs;  // (merit, accuracy)
  double correlation = 0.0;
};

/// Noise-degradation sweep over two systems (A = lightly trained, B = fully
/// trained) plus the 20-point merit-vs-accuracy correlation protocol
/// (10 noisy replicas of each system, both evaluated fast and transiently).
NoiseStudyResult run_noise(const ExperimentContext& ctx, const WeightMatrix& system_a,
                           const WeightMatrix& system_b, std::span<const double> sigmas,
                           int replicas, double correlation_sigma = 300.0);

struct TimingResult {
  double transient_seconds = 0.0;
  double fastval_seconds = 0.0;
  double speedup = 0.0;
  double transient_accuracy = 0.0;
  double merit = 0.0;
};

/// Wall-clock comparison of the transient recognition test against the
/// current-space evaluation on the full dataset.
TimingResult run_timing(const ExperimentContext& ctx, const WeightMatrix& weights);

/// Linear interpolation of the sigma at which a sweep's mean merit crosses
/// the given level, scanning upward in sigma. Returns 0 when the curve
/// starts below the level and +infinity when it never drops below it.
double merit_crossing(std::span<const NoisePoint> series, double level);

/// Report sink. Reports are self-contained: the echoed config block can be
/// fed back as a config file; everything outside `timing.` is reproducible
/// bit-for-bit from it.
class ReportWriter {
 public:
  explicit ReportWriter(std::string tool_version);

  void add_config(const ExperimentConfig& config);
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add_timing(const std::string& key, double seconds);

  std::string text() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string header_;
  std::string config_echo_;
  std::vector<std::pair<std::string, std::string>> results_;
  std::vector<std::pair<std::string, std::string>> timings_;
};

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

extern const char* kToolVersion;

}  // namespace snn
