// Experiment driver for the two-layer spiking classifier: benchmark runs,
// coverage/design-curve sweeps, learning-evolution and noise-tolerance
// studies, plus single train/test/fastval invocations.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snn/error.hpp"
#include "snn/experiment.hpp"
#include "snn/rng.hpp"

namespace fs = std::filesystem;
using namespace snn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSimulation = 3;
constexpr int kExitExpectation = 4;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int runs = 0;
  int jobs = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_config = true) {
  auto* config = cmd->add_option("--config", opt.config_path, "experiment config file");
  if (needs_config) config->required();
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--seed", opt.seed, "override run.seed")->each([&](const std::string&) {
    opt.seed_set = true;
  });
  cmd->add_option("--runs", opt.runs, "override run.count");
  cmd->add_option("--jobs", opt.jobs, "worker threads (0 = hardware)");
}

ExperimentConfig load_config(const CommonOptions& opt) {
  ExperimentConfig config = ExperimentConfig::from_file(opt.config_path);
  if (opt.seed_set) config.master_seed = opt.seed;
  if (opt.runs > 0) config.run_count = opt.runs;
  if (opt.jobs >= 0) config.jobs = opt.jobs;
  return config;
}

fs::path ensure_out(const CommonOptions& opt) {
  fs::create_directories(opt.out_dir);
  return opt.out_dir;
}

void report_bench(const ExperimentConfig& config, const BenchResult& bench, ReportWriter& report) {
  report.add_config(config);
  for (std::size_t k = 0; k < bench.runs.size(); ++k) {
    const auto& run = bench.runs[k];
    const std::string prefix = "run." + std::to_string(k + 1);
    report.add(prefix + ".seed", std::to_string(run.seed));
    report.add(prefix + ".accuracy", run.accuracy);
    report.add(prefix + ".outcomes",
               std::to_string(run.correct) + " correct, " + std::to_string(run.wrong) +
                   " wrong-spike, " + std::to_string(run.none) + " no-spike, " +
                   std::to_string(run.multi) + " multi-spike");
  }
  report.add("mean_accuracy", bench.mean_accuracy);
  if (bench.expectation_checked) {
    report.add("expect.accuracy", config.expect_accuracy);
    report.add("expect.tolerance", config.expect_tolerance);
    report.add("expect.pass", bench.expectation_met ? "true" : "false");
  }
  report.add_timing("bench_total_s", bench.seconds);
}

int cmd_bench(const CommonOptions& opt) {
  const auto config = load_config(opt);
  const auto ctx = prepare(config);
  const auto bench = run_bench(ctx);
  ReportWriter report(kToolVersion);
  report_bench(config, bench, report);
  const auto out = ensure_out(opt);
  report.write(out / "bench_report.txt");
  std::printf("bench: mean accuracy %.4f%% over %d runs (%.2fs)\n", bench.mean_accuracy,
              config.run_count, bench.seconds);
  if (bench.expectation_checked) {
    std::printf("bench: expected %.2f +- %.2f -> %s\n", config.expect_accuracy,
                config.expect_tolerance, bench.expectation_met ? "pass" : "FAIL");
    if (!bench.expectation_met) return kExitExpectation;
  }
  return kExitOk;
}

int cmd_design_curve(const CommonOptions& opt, double lo, double hi, int steps) {
  const auto config = load_config(opt);
  const auto curve = run_design_curve(config, lo, hi, steps);
  const auto out = ensure_out(opt);
  std::vector<std::vector<double>> rows;
  double best_ratio = 0.0, best_acc = -1.0;
  for (const auto& p : curve) {
    rows.push_back({p.ratio, p.mean_accuracy});
    if (p.mean_accuracy > best_acc) {
      best_acc = p.mean_accuracy;
      best_ratio = p.ratio;
    }
  }
  write_csv(out / "design_curve.csv", "ratio,mean_accuracy", rows);
  ReportWriter report(kToolVersion);
  report.add_config(config);
  report.add("design_curve.points", static_cast<double>(curve.size()));
  report.add("design_curve.best_ratio", best_ratio);
  report.add("design_curve.best_accuracy", best_acc);
  report.write(out / "design_curve_report.txt");
  std::printf("design-curve: best accuracy %.3f%% at ratio %.3f (%zu points)\n", best_acc,
              best_ratio, curve.size());
  return kExitOk;
}

int cmd_evolution(const CommonOptions& opt) {
  const auto config = load_config(opt);
  const auto ctx = prepare(config);
  const auto evo = run_evolution(ctx);
  const auto out = ensure_out(opt);
  std::vector<std::vector<double>> rows;
  for (std::size_t e = 0; e < evo.merit.size(); ++e) {
    rows.push_back({static_cast<double>(e), evo.merit[e], evo.robustness[e]});
  }
  write_csv(out / "evolution.csv", "epoch,merit,robustness", rows);
  evo.system_a.save(out / "system_a.weights");
  evo.system_b.save(out / "system_b.weights");
  ReportWriter report(kToolVersion);
  report.add_config(config);
  report.add("evolution.epochs", static_cast<double>(evo.merit.size() - 1));
  report.add("evolution.merit_epoch1", evo.merit.size() > 1 ? evo.merit[1] : 0.0);
  report.add("evolution.merit_final", evo.merit.back());
  report.add("evolution.robustness_epoch1", evo.robustness.size() > 1 ? evo.robustness[1] : 0.0);
  report.add("evolution.robustness_final", evo.robustness.back());
  report.add("evolution.r_normalizer", evo.r_normalizer);
  report.add("evolution.final_accuracy", evo.final_accuracy);
  report.add("evolution.merit_accuracy_gap", evo.merit_accuracy_gap);
  report.write(out / "evolution_report.txt");
  std::printf("evolution: merit %.2f -> %.2f, robustness %.2f -> %.2f, accuracy %.2f%%\n",
              evo.merit.size() > 1 ? evo.merit[1] : 0.0, evo.merit.back(),
              evo.robustness.size() > 1 ? evo.robustness[1] : 0.0, evo.robustness.back(),
              evo.final_accuracy);
  return kExitOk;
}

std::vector<double> parse_sigma_list(const std::string& text) {
  std::vector<double> sigmas;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) sigmas.push_back(std::stod(token));
  }
  if (sigmas.empty()) throw ConfigError("noise: --sigmas list is empty");
  return sigmas;
}

int cmd_noise(const CommonOptions& opt, const std::string& weights_a,
              const std::string& weights_b, const std::string& sigma_list, int replicas) {
  const auto config = load_config(opt);
  const auto ctx = prepare(config);
  if (!fs::exists(weights_a) || !fs::exists(weights_b)) {
    throw DataError("noise: missing snapshot file (" + weights_a + ", " + weights_b +
                    "); run `snn evolution` first");
  }
  const auto system_a = WeightMatrix::load(weights_a);
  const auto system_b = WeightMatrix::load(weights_b);
  const auto sigmas = parse_sigma_list(sigma_list);
  const auto study = run_noise(ctx, system_a, system_b, sigmas, replicas);
  const auto out = ensure_out(opt);

  std::vector<std::vector<double>> rows;
  for (const auto& p : study.system_a) rows.push_back({p.sigma, p.mean_merit, p.var_merit});
  write_csv(out / "noise_a.csv", "sigma,mean_merit,var_merit", rows);
  rows.clear();
  for (const auto& p : study.system_b) rows.push_back({p.sigma, p.mean_merit, p.var_merit});
  write_csv(out / "noise_b.csv", "sigma,mean_merit,var_merit", rows);
  rows.clear();
  for (std::size_t k = 0; k < study.correlation_pairs.size(); ++k) {
    rows.push_back({static_cast<double>(k < 10 ? 1 : 2), study.correlation_pairs[k].first,
                    study.correlation_pairs[k].second});
  }
  write_csv(out / "correlation.csv", "system,merit,transient_accuracy", rows);

  ReportWriter report(kToolVersion);
  report.add_config(config);
  report.add("noise.replicas", static_cast<double>(replicas));
  report.add("noise.crossing90_a", study.crossing_a);
  report.add("noise.crossing90_b", study.crossing_b);
  report.add("noise.correlation", study.correlation);
  report.write(out / "noise_report.txt");
  std::printf("noise: 90%%-merit crossing sigma A=%.1f B=%.1f, correlation r=%.4f\n",
              study.crossing_a, study.crossing_b, study.correlation);
  return kExitOk;
}

int cmd_timing(const CommonOptions& opt, const std::string& weights_path) {
  const auto config = load_config(opt);
  const auto ctx = prepare(config);
  const auto weights = WeightMatrix::load(weights_path);
  const auto timing = run_timing(ctx, weights);
  const auto out = ensure_out(opt);
  ReportWriter report(kToolVersion);
  report.add_config(config);
  report.add("timing.merit", timing.merit);
  report.add("timing.transient_accuracy", timing.transient_accuracy);
  report.add_timing("transient_test_s", timing.transient_seconds);
  report.add_timing("fastval_s", timing.fastval_seconds);
  report.add_timing("speedup", timing.speedup);
  report.write(out / "timing_report.txt");
  std::printf("timing: transient %.4fs, fastval %.6fs, speedup %.0fx\n",
              timing.transient_seconds, timing.fastval_seconds, timing.speedup);
  return kExitOk;
}

int cmd_train(const CommonOptions& opt) {
  const auto config = load_config(opt);
  const auto ctx = prepare(config);
  const std::uint64_t run_seed = derive_seed(config.master_seed, 0);
  const Split split = stratified_split(ctx.dataset, config.train_per_class, run_seed);
  TrainingSchedule schedule = config.schedule;
  schedule.seed = run_seed;
  const auto initial =
      init_weights(ctx.input_count(), static_cast<std::size_t>(ctx.config.network.output_count),
                   config.learning, config.init_mean_fraction, config.init_spread_fraction,
                   derive_seed(run_seed, 0x11));
  const auto trained =
      train(ctx.dataset, split, ctx.config.network, schedule, config.learning, ctx.stats, initial);
  const auto out = ensure_out(opt);
  trained.weights.save(out / "trained.weights");
  ReportWriter report(kToolVersion);
  report.add_config(config);
  report.add("train.seed", std::to_string(run_seed));
  report.add("train.samples", static_cast<double>(split.train_count()));
  report.add("train.weights_file", (out / "trained.weights").string());
  report.write(out / "train_report.txt");
  std::printf("train: %zu samples, %d epochs -> %s\n", split.train_count(), schedule.epochs,
              (out / "trained.weights").string().c_str());
  return kExitOk;
}

int cmd_test(const CommonOptions& opt, const std::string& weights_path) {
  const auto config = load_config(opt);
  const auto ctx = prepare(config);
  const auto weights = WeightMatrix::load(weights_path);
  const auto result =
      test(ctx.dataset, weights, ctx.config.network, ctx.stats, config.schedule.exposure);
  std::size_t wrong = 0, none = 0, multi = 0;
  for (Outcome o : result.outcomes) {
    wrong += o == Outcome::kWrongSpike;
    none += o == Outcome::kNoSpike;
    multi += o == Outcome::kMultiSpike;
  }
  const auto out = ensure_out(opt);
  ReportWriter report(kToolVersion);
  report.add_config(config);
  report.add("test.accuracy", result.accuracy);
  report.add("test.correct", static_cast<double>(result.correct));
  report.add("test.wrong_spike", static_cast<double>(wrong));
  report.add("test.no_spike", static_cast<double>(none));
  report.add("test.multi_spike", static_cast<double>(multi));
  report.write(out / "test_report.txt");
  std::printf("test: accuracy %.4f%% (%zu/%zu correct)\n", result.accuracy, result.correct,
              result.outcomes.size());
  return kExitOk;
}

int cmd_fastval(const CommonOptions& opt, const std::string& weights_path) {
  const auto config = load_config(opt);
  const auto ctx = prepare(config);
  const auto weights = WeightMatrix::load(weights_path);
  const auto points = project_all(ctx.currents, ctx.labels, weights, ctx.i_th);
  const auto analysis = analyze_current_space(points, ctx.dataset.class_count);
  const auto out = ensure_out(opt);

  std::vector<std::vector<double>> rows;
  for (const auto& p : analysis.points) {
    std::vector<double> row{static_cast<double>(p.true_class)};
    row.insert(row.end(), p.i_total.begin(), p.i_total.end());
    rows.push_back(std::move(row));
  }
  std::string header = "true_class";
  for (int j = 1; j <= ctx.dataset.class_count; ++j) {
    header += ",i_total_" + std::to_string(j);
  }
  write_csv(out / "current_space.csv", header, rows);

  ReportWriter report(kToolVersion);
  report.add_config(config);
  report.add("fastval.merit", analysis.merit);
  report.add("fastval.robustness", analysis.robustness.metric);
  report.add("fastval.d_max", analysis.robustness.d_max);
  for (std::size_t c = 0; c < analysis.robustness.d.size(); ++c) {
    report.add("fastval.d." + std::to_string(c + 1), analysis.robustness.d[c]);
  }
  report.write(out / "fastval_report.txt");
  std::printf("fastval: merit %.4f, robustness %.4f\n", analysis.merit,
              analysis.robustness.metric);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-layer spiking classifier with current-space evaluation"};
  app.require_subcommand(1);

  CommonOptions opt;
  double ratio_lo = 0.2, ratio_hi = 0.9;
  int steps = 8, replicas = 1000;
  std::string weights_path, weights_a, weights_b;
  std::string sigma_list = "10,25,50,75,100,150,200,250,300";

  auto* bench = app.add_subcommand("bench", "seeded train+test benchmark, averaged accuracy");
  add_common(bench, opt);

  auto* curve = app.add_subcommand("design-curve", "accuracy vs i_th/i_max sweep");
  add_common(curve, opt);
  curve->add_option("--lo", ratio_lo, "lowest ratio");
  curve->add_option("--hi", ratio_hi, "highest ratio");
  curve->add_option("--steps", steps, "number of sweep points");

  auto* evolution = app.add_subcommand("evolution", "per-epoch merit/robustness study");
  add_common(evolution, opt);

  auto* noise = app.add_subcommand("noise", "weight-noise degradation sweep");
  add_common(noise, opt);
  noise->add_option("--system-a", weights_a, "weights after light training")->required();
  noise->add_option("--system-b", weights_b, "weights after full training")->required();
  noise->add_option("--sigmas", sigma_list, "comma-separated sigma list");
  noise->add_option("--replicas", replicas, "noise replicas per sigma");

  auto* timing = app.add_subcommand("timing", "transient test vs fastval wall clock");
  add_common(timing, opt);
  timing->add_option("--weights", weights_path, "trained weight file")->required();

  auto* train_cmd = app.add_subcommand("train", "single seeded training run");
  add_common(train_cmd, opt);

  auto* test_cmd = app.add_subcommand("test", "transient recognition test");
  add_common(test_cmd, opt);
  test_cmd->add_option("--weights", weights_path, "trained weight file")->required();

  auto* fastval_cmd = app.add_subcommand("fastval", "current-space evaluation");
  add_common(fastval_cmd, opt);
  fastval_cmd->add_option("--weights", weights_path, "trained weight file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) return cmd_bench(opt);
    if (curve->parsed()) return cmd_design_curve(opt, ratio_lo, ratio_hi, steps);
    if (evolution->parsed()) return cmd_evolution(opt);
    if (noise->parsed()) return cmd_noise(opt, weights_a, weights_b, sigma_list, replicas);
    if (timing->parsed()) return cmd_timing(opt, weights_path);
    if (train_cmd->parsed()) return cmd_train(opt);
    if (test_cmd->parsed()) return cmd_test(opt, weights_path);
    if (fastval_cmd->parsed()) return cmd_fastval(opt, weights_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SimulationFault& e) {
    std::cerr << "simulation fault: " << e.what() << "\n";
    return kExitSimulation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
