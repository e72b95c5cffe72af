#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "snn/network.hpp"
#include "snn/units.hpp"

namespace snn {

/// Flat `section.key = value` config file. '#' starts a comment; blank lines
/// are skipped. Keys under reserved prefixes (result., timing., report.) are
/// ignored so an emitted report can be fed back in as a config. Reading a
/// key marks it consumed; unknown leftovers are an error, which catches
/// typos with their full field path.
class ConfigMap {
 public:
  static ConfigMap from_file(const std::filesystem::path& path);
  static ConfigMap from_string(const std::string& text);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);

  double get_quantity(const std::string& key, Dimension dim, double fallback);
  double get_quantity(const std::string& key, Dimension dim);  // required

  double get_double(const std::string& key, double fallback);
  long get_int(const std::string& key, long fallback);
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback);

  /// Throws ConfigError when any non-reserved key was never consumed.
  void reject_unknown_keys() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

/// Everything a benchmark experiment needs, resolved from one config file.
struct ExperimentConfig {
  std::filesystem::path data_file;
  std::string data_format;
  std::size_t train_per_class = 0;

  NetworkConfig network;  // output_count is resolved from the dataset later
  LearningParams learning;
  TrainingSchedule schedule;
  double init_mean_fraction = 0.4;
  double init_spread_fraction = 0.1;

  int run_count = 10;
  std::uint64_t master_seed = 1;
  int jobs = 0;  // 0 = hardware concurrency

  double expect_accuracy = -1.0;  // < 0 = no expectation recorded
  double expect_tolerance = 0.0;

  static ExperimentConfig from_file(const std::filesystem::path& path);
  static ExperimentConfig from_config(ConfigMap& map);

  /// Canonical re-loadable `key = value` lines; parsing them back yields a
  /// bit-identical ExperimentConfig.
  std::string echo() const;
};

}  // namespace snn
