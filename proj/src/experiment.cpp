#include "snn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "snn/error.hpp"
#include "snn/parallel.hpp"
#include "snn/rng.hpp"

namespace snn {

const char* kToolVersion = "snn 0.1.0";

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

WeightMatrix initial_weights(const ExperimentContext& ctx, std::uint64_t run_seed) {
  return init_weights(ctx.input_count(), static_cast<std::size_t>(ctx.config.network.output_count),
                      ctx.config.learning, ctx.config.init_mean_fraction,
                      ctx.config.init_spread_fraction, derive_seed(run_seed, 0x11));
}

RunOutcome single_run(const ExperimentContext& ctx, std::uint64_t run_seed) {
  const auto& cfg = ctx.config;
  const Split split = stratified_split(ctx.dataset, cfg.train_per_class, run_seed);
  TrainingSchedule schedule = cfg.schedule;
  schedule.seed = run_seed;
  const auto trained = train(ctx.dataset, split, cfg.network, schedule, cfg.learning, ctx.stats,
                             initial_weights(ctx, run_seed));
  const auto result =
      test(ctx.dataset, trained.weights, cfg.network, ctx.stats, schedule.exposure);
  RunOutcome run;
  run.seed = run_seed;
  run.accuracy = result.accuracy;
  for (Outcome o : result.outcomes) {
    switch (o) {
      case Outcome::kCorrect: ++run.correct; break;
      case Outcome::kWrongSpike: ++run.wrong; break;
      case Outcome::kNoSpike: ++run.none; break;
      case Outcome::kMultiSpike: ++run.multi; break;
    }
  }
  return run;
}

}  // namespace

ExperimentContext prepare(const ExperimentConfig& config) {
  ExperimentContext ctx;
  ctx.config = config;
  ctx.dataset = load_named(config.data_file, config.data_format);
  ctx.config.network.output_count = ctx.dataset.class_count;
  ctx.config.network.validate();
  if (config.train_per_class > 0) {
    for (int label = 1; label <= ctx.dataset.class_count; ++label) {
      const auto size = ctx.dataset.class_size(label);
      if (config.train_per_class > size) {
        throw ConfigError("data.train_per_class: " + std::to_string(config.train_per_class) +
                          " exceeds class " + std::to_string(label) + " size " +
                          std::to_string(size));
      }
    }
  }
  ctx.stats = compute_stats(ctx.dataset);
  ctx.i_th = threshold_current(ctx.config.network.input_neuron);
  ctx.currents.reserve(ctx.dataset.samples.size());
  ctx.labels.reserve(ctx.dataset.samples.size());
  for (const auto& s : ctx.dataset.samples) {
    ctx.currents.push_back(encode_sample(s.features, ctx.stats, ctx.config.network.encoder));
    ctx.labels.push_back(s.label);
  }
  return ctx;
}

BenchResult run_bench(const ExperimentContext& ctx) {
  const auto& cfg = ctx.config;
  BenchResult bench;
  bench.runs.resize(static_cast<std::size_t>(cfg.run_count));
  const double start = now_seconds();
  parallel_for(bench.runs.size(), cfg.jobs, [&](std::size_t k) {
    bench.runs[k] = single_run(ctx, derive_seed(cfg.master_seed, k));
  });
  bench.seconds = now_seconds() - start;
  double sum = 0.0;
  for (const auto& run : bench.runs) sum += run.accuracy;
  bench.mean_accuracy = sum / static_cast<double>(bench.runs.size());
  if (cfg.expect_accuracy >= 0) {
    bench.expectation_checked = true;
    bench.expectation_met =
        std::abs(bench.mean_accuracy - cfg.expect_accuracy) <= cfg.expect_tolerance;
  }
  return bench;
}

std::vector<DesignCurvePoint> run_design_curve(const ExperimentConfig& config, double ratio_lo,
                                               double ratio_hi, int steps) {
  if (!(ratio_lo > 0) || !(ratio_hi < 1) || !(ratio_lo <= ratio_hi)) {
    throw ConfigError("design-curve: ratio range must satisfy 0 < lo <= hi < 1");
  }
  if (steps < 1) throw ConfigError("design-curve: steps must be >= 1");
  std::vector<DesignCurvePoint> curve;
  const double i_th = threshold_current(config.network.input_neuron);
  for (int s = 0; s < steps; ++s) {
    const double ratio =
        steps == 1 ? ratio_lo
                   : ratio_lo + (ratio_hi - ratio_lo) * static_cast<double>(s) / (steps - 1);
    ExperimentConfig point_config = config;
    point_config.network.encoder.i_max = i_th / ratio;
    const auto ctx = prepare(point_config);
    const auto bench = run_bench(ctx);
    curve.push_back({ratio, bench.mean_accuracy});
  }
  return curve;
}

EvolutionResult run_evolution(const ExperimentContext& ctx) {
  const auto& cfg = ctx.config;
  const std::uint64_t run_seed = derive_seed(cfg.master_seed, 0);
  const Split split = stratified_split(ctx.dataset, cfg.train_per_class, run_seed);
  TrainingSchedule schedule = cfg.schedule;
  schedule.seed = run_seed;
  schedule.snapshot_per_epoch = true;
  const auto initial = initial_weights(ctx, run_seed);
  const auto trained =
      train(ctx.dataset, split, cfg.network, schedule, cfg.learning, ctx.stats, initial);
  if (trained.epoch_snapshots.empty()) {
    throw ConfigError("evolution: schedule.epochs must be >= 1");
  }

  EvolutionResult evo;
  // point clouds per epoch (0 = untrained), then a shared normalizer so the
  // robustness series is comparable across epochs
  std::vector<std::vector<CurrentSpacePoint>> clouds;
  clouds.push_back(project_all(ctx.currents, ctx.labels, initial, ctx.i_th));
  for (const auto& snapshot : trained.epoch_snapshots) {
    clouds.push_back(project_all(ctx.currents, ctx.labels, snapshot, ctx.i_th));
  }
  double r = 0.0;
  for (const auto& cloud : clouds) {
    for (const auto& p : cloud) {
      for (double v : p.i_total) r = std::max(r, v);
    }
  }
  evo.r_normalizer = r;
  for (const auto& cloud : clouds) {
    evo.merit.push_back(merit_figure(cloud));
    evo.robustness.push_back(
        robustness_metric(cloud, ctx.dataset.class_count, r).metric);
  }

  const auto result =
      test(ctx.dataset, trained.weights, cfg.network, ctx.stats, cfg.schedule.exposure);
  evo.final_accuracy = result.accuracy;
  evo.merit_accuracy_gap = std::abs(evo.merit.back() - result.accuracy);
  evo.system_a = trained.epoch_snapshots.front();
  evo.system_b = trained.epoch_snapshots.back();
  return evo;
}

double merit_crossing(std::span<const NoisePoint> series, double level) {
  if (series.empty()) return 0.0;
  if (series.front().mean_merit < level) return 0.0;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    const auto& a = series[k];
    const auto& b = series[k + 1];
    if (a.mean_merit >= level && b.mean_merit < level) {
      const double f = (a.mean_merit - level) / (a.mean_merit - b.mean_merit);
      return a.sigma + f * (b.sigma - a.sigma);
    }
  }
  return std::numeric_limits<double>::infinity();
}

NoiseStudyResult run_noise(const ExperimentContext& ctx, const WeightMatrix& system_a,
                           const WeightMatrix& system_b, std::span<const double> sigmas,
                           int replicas, double correlation_sigma) {
  const auto& cfg = ctx.config;
  NoiseStudyResult study;
  study.system_a = noise_sweep(system_a, sigmas, replicas, ctx.currents, ctx.labels, ctx.i_th,
                               derive_seed(cfg.master_seed, 0xA), cfg.jobs);
  study.system_b = noise_sweep(system_b, sigmas, replicas, ctx.currents, ctx.labels, ctx.i_th,
                               derive_seed(cfg.master_seed, 0xB), cfg.jobs);
  study.crossing_a = merit_crossing(study.system_a, 90.0);
  study.crossing_b = merit_crossing(study.system_b, 90.0);

  // 20-point correlation protocol: 10 noisy replicas of each system, each
  // scored by the fast evaluation and by the transient recognition test
  const int per_system = 10;
  study.correlation_pairs.resize(2 * per_system);
  parallel_for(study.correlation_pairs.size(), cfg.jobs, [&](std::size_t k) {
    const bool is_b = k >= static_cast<std::size_t>(per_system);
    const auto& base = is_b ? system_b : system_a;
    const auto noisy =
        add_weight_noise(base, correlation_sigma, derive_seed(cfg.master_seed, 0xC0 + k));
    const auto points = project_all(ctx.currents, ctx.labels, noisy, ctx.i_th);
    const double merit = merit_figure(points);
    const auto result =
        test(ctx.dataset, noisy, cfg.network, ctx.stats, cfg.schedule.exposure);
    study.correlation_pairs[k] = {merit, result.accuracy};
  });
  study.correlation = merit_accuracy_correlation(study.correlation_pairs);
  return study;
}

TimingResult run_timing(const ExperimentContext& ctx, const WeightMatrix& weights) {
  const auto& cfg = ctx.config;
  TimingResult timing;

  double start = now_seconds();
  const auto result =
      test(ctx.dataset, weights, cfg.network, ctx.stats, cfg.schedule.exposure);
  timing.transient_seconds = now_seconds() - start;
  timing.transient_accuracy = result.accuracy;

  // the fast evaluation is microseconds-scale; repeat until enough wall
  // clock accumulates for a stable figure
  int repeats = 0;
  start = now_seconds();
  double elapsed = 0.0;
  do {
    const auto points = project_all(ctx.currents, ctx.labels, weights, ctx.i_th);
    timing.merit = merit_figure(points);
    ++repeats;
    elapsed = now_seconds() - start;
  } while (elapsed < 0.02);
  timing.fastval_seconds = elapsed / repeats;
  timing.speedup = timing.transient_seconds / timing.fastval_seconds;
  return timing;
}

ReportWriter::ReportWriter(std::string tool_version) {
  header_ = "# snn report\n# tool = " + tool_version + "\n";
}

void ReportWriter::add_config(const ExperimentConfig& config) { config_echo_ = config.echo(); }

void ReportWriter::add(const std::string& key, const std::string& value) {
  results_.emplace_back("result." + key, value);
}

void ReportWriter::add(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  results_.emplace_back("result." + key, buf);
}

void ReportWriter::add_timing(const std::string& key, double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", seconds);
  timings_.emplace_back("timing." + key, buf);
}

std::string ReportWriter::text() const {
  std::ostringstream out;
  out << header_;
  out << "# --- config (re-runnable) ---\n" << config_echo_;
  out << "# --- results (deterministic) ---\n";
  for (const auto& [k, v] : results_) out << k << " = " << v << "\n";
  if (!timings_.empty()) {
    out << "# --- timing (machine-dependent) ---\n";
    for (const auto& [k, v] : timings_) out << k << " = " << v << "\n";
  }
  return out.str();
}

void ReportWriter::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report: " + path.string());
  out << text();
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write csv: " + path.string());
  out << header << "\n";
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", row[k]);
      out << buf << (k + 1 < row.size() ? "," : "\n");
    }
  }
}

}  // namespace snn
