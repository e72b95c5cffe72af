#include "snn/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "snn/error.hpp"
#include "snn/rng.hpp"

namespace snn {

std::vector<std::size_t> Dataset::class_indices(int label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].label == label) out.push_back(i);
  }
  return out;
}

FormatSpec FormatSpec::named(const std::string& format_name) {
  FormatSpec spec;
  spec.name = format_name;
  if (format_name == "iris") {
    spec.label_map = {{"Iris-setosa", 1}, {"Iris-versicolor", 2}, {"Iris-virginica", 3}};
  } else if (format_name == "wisconsin") {
    spec.drop_leading_columns = 1;  // sample code number
    spec.missing_token = "?";
    spec.label_map = {{"2", 1}, {"4", 2}};  // benign, malignant
  } else if (format_name == "wine") {
    spec.label_first = true;
    spec.label_map = {{"1", 1}, {"2", 2}, {"3", 3}};
  } else if (format_name == "heart") {
    spec.delimiter = '\0';
    spec.label_map = {{"1", 1}, {"2", 2}};  // absence, presence
  } else if (format_name == "csv") {
    // defaults: comma-delimited, label last, labels mapped in sorted order
  } else if (format_name == "whitespace") {
    spec.delimiter = '\0';
  } else {
    throw ConfigError("data.format: unknown format '" + format_name + "'");
  }
  return spec;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  if (delimiter == '\0') {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) fields.push_back(tok);
    return fields;
  }
  std::string cur;
  for (char ch : line) {
    if (ch == delimiter) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  for (auto& f : fields) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ' || f.back() == '\t')) f.pop_back();
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
  }
  return fields;
}

double parse_feature(const std::string& tok, std::size_t row) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') {
    throw DataError("row " + std::to_string(row) + ": bad feature value '" + tok + "'");
  }
  return v;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

Dataset load(const std::filesystem::path& path, const FormatSpec& spec) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path.string());

  Dataset ds;
  ds.name = spec.name;
  std::vector<std::string> raw_labels;
  std::vector<std::vector<bool>> missing_mask;
  std::string line;
  std::size_t row = 0;
  std::size_t expected_fields = 0;

  while (std::getline(in, line)) {
    ++row;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    auto fields = split_fields(line, spec.delimiter);
    if (fields.size() < 2 + static_cast<std::size_t>(spec.drop_leading_columns)) {
      throw DataError("row " + std::to_string(row) + ": too few columns");
    }
    if (expected_fields == 0) {
      expected_fields = fields.size();
    } else if (fields.size() != expected_fields) {
      throw DataError("row " + std::to_string(row) + ": expected " +
                      std::to_string(expected_fields) + " columns, got " +
                      std::to_string(fields.size()));
    }
    fields.erase(fields.begin(), fields.begin() + spec.drop_leading_columns);
    std::string label;
    if (spec.label_first) {
      label = fields.front();
      fields.erase(fields.begin());
    } else {
      label = fields.back();
      fields.pop_back();
    }

    Sample s;
    std::vector<bool> miss(fields.size(), false);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (!spec.missing_token.empty() && fields[f] == spec.missing_token) {
        miss[f] = true;
        s.features.push_back(0.0);  // placeholder until imputation
      } else {
        s.features.push_back(parse_feature(fields[f], row));
      }
    }
    if (!spec.label_map.empty()) {
      const auto it = spec.label_map.find(label);
      if (it == spec.label_map.end()) {
        throw DataError("row " + std::to_string(row) + ": unknown label '" + label + "'");
      }
      s.label = it->second;
    }
    raw_labels.push_back(label);
    missing_mask.push_back(std::move(miss));
    ds.samples.push_back(std::move(s));
  }
  if (ds.samples.empty()) {
    throw DataError("dataset file " + path.string() + " contains no samples");
  }

  ds.feature_count = ds.samples.front().features.size();

  // auto label map: distinct raw labels in sorted order -> 1..N
  if (spec.label_map.empty()) {
    std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
    std::map<std::string, int> auto_map;
    int next = 1;
    for (const auto& l : distinct) auto_map[l] = next++;
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
      ds.samples[i].label = auto_map[raw_labels[i]];
    }
    ds.class_count = next - 1;
  } else {
    int max_label = 0;
    for (const auto& [_, v] : spec.label_map) max_label = std::max(max_label, v);
    ds.class_count = max_label;
  }

  // median imputation over non-missing values, class-blind
  for (std::size_t f = 0; f < ds.feature_count; ++f) {
    std::vector<double> present;
    bool any_missing = false;
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
      if (missing_mask[i][f]) {
        any_missing = true;
      } else {
        present.push_back(ds.samples[i].features[f]);
      }
    }
    if (!any_missing) continue;
    if (present.empty()) {
      throw DataError("feature " + std::to_string(f) + " has no non-missing values");
    }
    const double fill = median(std::move(present));
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
      if (missing_mask[i][f]) ds.samples[i].features[f] = fill;
    }
  }
  return ds;
}

Dataset load_named(const std::filesystem::path& path, const std::string& format_name) {
  return load(path, FormatSpec::named(format_name));
}

void save(const Dataset& dataset, const std::filesystem::path& path, const FormatSpec& spec) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write dataset file: " + path.string());
  // invert the label map for textual labels
  std::map<int, std::string> inverse;
  for (const auto& [k, v] : spec.label_map) inverse[v] = k;
  const std::string delim = spec.delimiter == '\0' ? " " : std::string(1, spec.delimiter);
  char buf[64];
  for (const auto& s : dataset.samples) {
    std::string label =
        inverse.count(s.label) ? inverse.at(s.label) : std::to_string(s.label);
    std::vector<std::string> fields;
    for (int k = 0; k < spec.drop_leading_columns; ++k) fields.push_back("0");
    if (spec.label_first) fields.push_back(label);
    for (double v : s.features) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      fields.push_back(buf);
    }
    if (!spec.label_first) fields.push_back(label);
    for (std::size_t k = 0; k < fields.size(); ++k) {
      out << fields[k] << (k + 1 < fields.size() ? delim : "\n");
    }
  }
}

std::size_t Split::train_count() const {
  std::size_t n = 0;
  for (const auto& c : train_per_class) n += c.size();
  return n;
}

Split stratified_split(const Dataset& dataset, std::size_t per_class, std::uint64_t seed) {
  Split split;
  split.seed = seed;
  Rng rng(seed);
  for (int label = 1; label <= dataset.class_count; ++label) {
    auto pool = dataset.class_indices(label);
    if (per_class > pool.size()) {
      throw ConfigError("data.train_per_class: " + std::to_string(per_class) +
                        " exceeds class " + std::to_string(label) + " size " +
                        std::to_string(pool.size()));
    }
    // partial Fisher-Yates: draw per_class indices without replacement
    for (std::size_t k = 0; k < per_class; ++k) {
      const std::size_t pick = k + static_cast<std::size_t>(rng.integer(pool.size() - k));
      std::swap(pool[k], pool[pick]);
    }
    pool.resize(per_class);
    split.train_per_class.push_back(std::move(pool));
  }
  return split;
}

NormalizationStats compute_stats(const Dataset& dataset) {
  if (dataset.samples.empty()) throw DataError("compute_stats: empty dataset");
  NormalizationStats stats;
  stats.min.assign(dataset.feature_count, std::numeric_limits<double>::infinity());
  stats.max.assign(dataset.feature_count, -std::numeric_limits<double>::infinity());
  for (const auto& s : dataset.samples) {
    for (std::size_t f = 0; f < dataset.feature_count; ++f) {
      stats.min[f] = std::min(stats.min[f], s.features[f]);
      stats.max[f] = std::max(stats.max[f], s.features[f]);
    }
  }
  return stats;
}

}  // namespace snn
