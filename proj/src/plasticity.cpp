#include "snn/plasticity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "snn/error.hpp"
#include "snn/rng.hpp"

namespace snn {

void LearningParams::validate() const {
  if (!(a_up > 0)) throw ConfigError("learning.a_up: must be > 0");
  if (!(a_down < 0)) throw ConfigError("learning.a_down: must be < 0");
  if (!(mu > 1)) throw ConfigError("learning.mu: must be > 1");
  if (!(tau_up > 0)) throw ConfigError("learning.tau_up: must be > 0");
  if (!(tau_down > 0)) throw ConfigError("learning.tau_down: must be > 0");
  if (!(w_max > 0)) throw ConfigError("learning.w_max: must be > 0");
}

double delta_w(double w, double dt, const LearningParams& params) {
  if (dt == 0.0) return 0.0;
  if (dt > 0.0) {
    const double headroom = std::max(0.0, 1.0 - w / params.w_max);
    return params.a_up * std::pow(headroom, params.mu) * std::exp(-dt / params.tau_up);
  }
  const double level = std::max(0.0, w / params.w_max);
  return params.a_down * std::pow(level, params.mu) * std::exp(dt / params.tau_down);
}

double PairingState::on_pre(double t, double w, const LearningParams& params) {
  if (post_unpaired && last_post < t) {
    w = clamp_weight(w + delta_w(w, last_post - t, params), params);
    post_unpaired = false;
  }
  last_pre = t;
  pre_unpaired = true;
  return w;
}

double PairingState::on_post(double t, double w, const LearningParams& params) {
  if (pre_unpaired && last_pre < t) {
    w = clamp_weight(w + delta_w(w, t - last_pre, params), params);
    pre_unpaired = false;
  }
  last_post = t;
  post_unpaired = true;
  return w;
}

double apply_pairing(std::span<const double> pre_spikes,
                     std::span<const double> post_spikes, double w,
                     const LearningParams& params) {
  PairingState state;
  std::size_t a = 0, b = 0;
  while (a < pre_spikes.size() || b < post_spikes.size()) {
    const bool take_pre =
        b >= post_spikes.size() ||
        (a < pre_spikes.size() && pre_spikes[a] <= post_spikes[b]);
    if (take_pre) {
      w = state.on_pre(pre_spikes[a++], w, params);
    } else {
      w = state.on_post(post_spikes[b++], w, params);
    }
  }
  return w;
}

void WeightMatrix::validate() const {
  if (w.size() != rows * cols) {
    throw ConfigError("weight matrix: storage size does not match rows*cols");
  }
  if (!(w_max > 0)) throw ConfigError("weight matrix: w_max must be > 0");
  for (double v : w) {
    if (!(v >= 0.0 && v <= w_max)) {
      throw ConfigError("weight matrix: entry outside [0, w_max]");
    }
  }
}

void WeightMatrix::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write weight file: " + path.string());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", rows, cols, w_max);
  out << buf;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", at(i, j));
      out << buf << (j + 1 < cols ? " " : "\n");
    }
  }
  if (!out) throw DataError("short write to weight file: " + path.string());
}

WeightMatrix WeightMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open weight file: " + path.string());
  WeightMatrix m;
  if (!(in >> m.rows >> m.cols >> m.w_max)) {
    throw DataError("weight file " + path.string() + ": bad header (want 'rows cols w_max')");
  }
  m.w.resize(m.rows * m.cols);
  for (double& v : m.w) {
    if (!(in >> v)) {
      throw DataError("weight file " + path.string() + ": truncated matrix body");
    }
  }
  m.validate();
  return m;
}

WeightMatrix init_weights(std::size_t rows, std::size_t cols, const LearningParams& params,
                          double mean_fraction, double spread_fraction, std::uint64_t seed) {
  if (rows == 0 || cols == 0) {
    throw ConfigError("init_weights: matrix shape must be non-empty");
  }
  WeightMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.w_max = params.w_max;
  m.w.resize(rows * cols);
  const double mean = mean_fraction * params.w_max;
  const double spread = spread_fraction * params.w_max;
  Rng rng(seed);
  for (double& v : m.w) {
    v = clamp_weight(rng.uniform(mean - spread, mean + spread), params);
  }
  return m;
}

}  // namespace snn
