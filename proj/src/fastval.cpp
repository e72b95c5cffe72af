#include "snn/fastval.hpp"

#include <algorithm>
#include <cmath>

#include "snn/error.hpp"
#include "snn/parallel.hpp"
#include "snn/rng.hpp"

namespace snn {

CurrentSpacePoint project(std::span<const double> currents, const WeightMatrix& weights,
                          double i_th, int true_class) {
  if (currents.size() != weights.rows) {
    throw ConfigError("project: " + std::to_string(currents.size()) +
                      " input currents vs weight matrix with " +
                      std::to_string(weights.rows) + " rows");
  }
  CurrentSpacePoint point;
  point.true_class = true_class;
  point.i_total.assign(weights.cols, 0.0);
  for (std::size_t i = 0; i < weights.rows; ++i) {
    const double current = currents[i];
    if (!(current > i_th)) continue;  // strict step: at-threshold never fires
    for (std::size_t j = 0; j < weights.cols; ++j) {
      point.i_total[j] += weights.at(i, j) * current;
    }
  }
  return point;
}

std::vector<CurrentSpacePoint> project_all(const std::vector<std::vector<double>>& currents,
                                           std::span<const int> labels,
                                           const WeightMatrix& weights, double i_th) {
  if (currents.size() != labels.size()) {
    throw ConfigError("project_all: currents/labels length mismatch");
  }
  std::vector<CurrentSpacePoint> points;
  points.reserve(currents.size());
  for (std::size_t k = 0; k < currents.size(); ++k) {
    points.push_back(project(currents[k], weights, i_th, labels[k]));
  }
  return points;
}

namespace {

bool in_correct_subspace(const CurrentSpacePoint& p) {
  const double own = p.i_total[static_cast<std::size_t>(p.true_class - 1)];
  for (std::size_t k = 0; k < p.i_total.size(); ++k) {
    if (static_cast<int>(k) == p.true_class - 1) continue;
    if (!(own > p.i_total[k])) return false;  // ties lose
  }
  return true;
}

}  // namespace

double merit_figure(std::span<const CurrentSpacePoint> points) {
  if (points.empty()) throw ConfigError("merit_figure: no points");
  std::size_t correct = 0;
  for (const auto& p : points) {
    if (in_correct_subspace(p)) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(points.size());
}

Robustness robustness_metric(std::span<const CurrentSpacePoint> points, int class_count,
                             double r_override) {
  Robustness rob;
  const std::size_t n_cls = static_cast<std::size_t>(class_count);
  rob.class_means.assign(n_cls, {});
  std::vector<std::size_t> counts(n_cls, 0);
  double r_max = 0.0;
  for (const auto& p : points) {
    const std::size_t c = static_cast<std::size_t>(p.true_class - 1);
    if (c >= n_cls) throw ConfigError("robustness_metric: label outside class count");
    auto& mean = rob.class_means[c];
    if (mean.empty()) mean.assign(p.i_total.size(), 0.0);
    for (std::size_t j = 0; j < p.i_total.size(); ++j) {
      mean[j] += p.i_total[j];
      r_max = std::max(r_max, p.i_total[j]);
    }
    ++counts[c];
  }
  for (std::size_t c = 0; c < n_cls; ++c) {
    if (counts[c] == 0) {
      throw ConfigError("robustness_metric: class " + std::to_string(c + 1) + " has no samples");
    }
    for (double& v : rob.class_means[c]) v /= static_cast<double>(counts[c]);
  }

  const double r = r_override > 0.0 ? r_override : r_max;
  rob.d_max = r / std::sqrt(2.0);
  rob.d.assign(n_cls, 0.0);
  for (std::size_t c = 0; c < n_cls; ++c) {
    const auto& m = rob.class_means[c];
    // signed perpendicular distance to the nearest pairwise boundary
    // I_c = I_k, which is (m[c] - m[k]) / sqrt(2); normalized by r/sqrt(2)
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_cls; ++k) {
      if (k == c) continue;
      worst = std::min(worst, m[c] - m[k]);
    }
    rob.d[c] = r > 0.0 ? worst / r : 0.0;
  }
  rob.metric = 100.0 * *std::min_element(rob.d.begin(), rob.d.end());
  return rob;
}

CurrentSpaceReport analyze_current_space(std::vector<CurrentSpacePoint> points,
                                         int class_count, double r_override) {
  CurrentSpaceReport report;
  report.merit = merit_figure(points);
  report.robustness = robustness_metric(points, class_count, r_override);
  report.points = std::move(points);
  return report;
}

WeightMatrix add_weight_noise(const WeightMatrix& weights, double sigma, std::uint64_t seed) {
  if (sigma < 0) throw ConfigError("add_weight_noise: sigma must be >= 0");
  WeightMatrix noisy = weights;
  if (sigma == 0.0) return noisy;
  Rng rng(seed);
  for (double& v : noisy.w) {
    v += rng.normal(0.0, sigma);
    v = std::clamp(v, 0.0, noisy.w_max);
  }
  return noisy;
}

std::vector<NoisePoint> noise_sweep(const WeightMatrix& weights,
                                    std::span<const double> sigmas, int replicas,
                                    const std::vector<std::vector<double>>& currents,
                                    std::span<const int> labels, double i_th,
                                    std::uint64_t seed, int jobs) {
  if (replicas < 1) throw ConfigError("noise_sweep: replicas must be >= 1");
  std::vector<NoisePoint> series(sigmas.size());
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    std::vector<double> merits(static_cast<std::size_t>(replicas));
    parallel_for(static_cast<std::size_t>(replicas), jobs, [&](std::size_t r) {
      const std::uint64_t replica_seed =
          derive_seed(seed, s * static_cast<std::size_t>(replicas) + r);
      const auto noisy = add_weight_noise(weights, sigmas[s], replica_seed);
      const auto points = project_all(currents, labels, noisy, i_th);
      merits[r] = merit_figure(points);
    });
    double mean = 0.0;
    for (double m : merits) mean += m;
    mean /= static_cast<double>(replicas);
    double var = 0.0;
    for (double m : merits) var += (m - mean) * (m - mean);
    if (replicas > 1) var /= static_cast<double>(replicas - 1);
    series[s] = {sigmas[s], mean, var};
  }
  return series;
}

double merit_accuracy_correlation(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3) {
    throw ConfigError("merit_accuracy_correlation: need at least 3 pairs");
  }
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw ConfigError("merit_accuracy_correlation: zero variance in a series");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace snn
