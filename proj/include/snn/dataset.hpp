#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "snn/encoding.hpp"

namespace snn {

struct Sample {
  std::vector<double> features;
  int label = 0;  // 1-based class index
};

struct Dataset {
  std::string name;
  std::vector<Sample> samples;
  int class_count = 0;
  std::size_t feature_count = 0;

  std::vector<std::size_t> class_indices(int label) const;
  std::size_t class_size(int label) const { return class_indices(label).size(); }
};

/// Shape of a delimited dataset file. Named presets cover the canonical UCI
/// layouts; the fields allow non-canonical copies to parse too.
struct FormatSpec {
  std::string name = "csv";
  char delimiter = ',';            // '\0' = any whitespace run
  bool label_first = false;        // label in the first column instead of the last
  int drop_leading_columns = 0;    // e.g. the Wisconsin sample-ID column
  std::string missing_token;       // empty = missing values are an error
  std::map<std::string, int> label_map;  // raw label -> class index; empty = auto

  /// iris | wisconsin | wine | heart, or csv/whitespace for the generic forms.
  static FormatSpec named(const std::string& format_name);
};

/// Parse a dataset file. Rows with the missing token get that attribute
/// imputed with the per-feature median over non-missing values. Malformed
/// rows, unknown labels and unreadable files raise DataError with the row
/// number.
Dataset load(const std::filesystem::path& path, const FormatSpec& spec);
Dataset load_named(const std::filesystem::path& path, const std::string& format_name);

/// Write a dataset back out in the given layout (round-trip precision).
void save(const Dataset& dataset, const std::filesystem::path& path, const FormatSpec& spec);

/// Seeded stratified training selection. Per the benchmarking protocol the
/// test set is the entire dataset, so only training indices are drawn.
struct Split {
  std::vector<std::vector<std::size_t>> train_per_class;  // [class-1] -> indices
  std::uint64_t seed = 0;

  std::size_t train_count() const;
};

Split stratified_split(const Dataset& dataset, std::size_t per_class, std::uint64_t seed);

/// Per-feature min/max over the full dataset (computed before any split).
NormalizationStats compute_stats(const Dataset& dataset);

}  // namespace snn
