#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "snn/plasticity.hpp"

namespace snn {

/// One sample mapped into the N-dimensional current space: component j is
/// the total supra-threshold current delivered to output neuron j.
struct CurrentSpacePoint {
  std::vector<double> i_total;  // amperes * weight-units, length N
  int true_class = 0;           // 1-based
};

/// i_total[j] = sum_i w(i,j) * I_i * u(I_i - i_th), with u the strict unit
/// step (a current exactly at threshold never fires, so it contributes
/// nothing). Throws on dimension mismatch.
CurrentSpacePoint project(std::span<const double> currents, const WeightMatrix& weights,
                          double i_th, int true_class);

std::vector<CurrentSpacePoint> project_all(const std::vector<std::vector<double>>& currents,
                                           std::span<const int> labels,
                                           const WeightMatrix& weights, double i_th);

/// Percentage of points lying strictly inside their own class subspace
/// (i_total of the true class strictly exceeds every other component; ties
/// count as incorrect).
double merit_figure(std::span<const CurrentSpacePoint> points);

/// Normalized signed distances of the class means from their nearest
/// decision boundary, and the summary metric min(d)*100. d_max is the
/// normalizer R/sqrt(2) with R the largest i_total component observed; it
/// can be pinned via r_override so metrics stay comparable across epochs of
/// one run.
struct Robustness {
  std::vector<double> d;      // per class, normalized; negative = wrong side
  double metric = 0.0;        // min(d) * 100
  double d_max = 0.0;         // normalizer actually used
  std::vector<std::vector<double>> class_means;
};

Robustness robustness_metric(std::span<const CurrentSpacePoint> points, int class_count,
                             double r_override = 0.0);

/// Full current-space record for reports.
struct CurrentSpaceReport {
  std::vector<CurrentSpacePoint> points;
  double merit = 0.0;
  Robustness robustness;
};

CurrentSpaceReport analyze_current_space(std::vector<CurrentSpacePoint> points,
                                         int class_count, double r_override = 0.0);

/// Independent zero-mean Gaussian perturbation of every weight, clamped back
/// into [0, w_max]. Deterministic per seed.
WeightMatrix add_weight_noise(const WeightMatrix& weights, double sigma, std::uint64_t seed);

struct NoisePoint {
  double sigma = 0.0;
  double mean_merit = 0.0;
  double var_merit = 0.0;  // sample variance over replicas
};

/// Merit degradation under weight noise: for each sigma, perturb the weights
/// `replicas` times, project every sample, and average the merit figures.
/// Replica r of sigma index s uses seed derive_seed(seed, s*replicas + r).
std::vector<NoisePoint> noise_sweep(const WeightMatrix& weights,
                                    std::span<const double> sigmas, int replicas,
                                    const std::vector<std::vector<double>>& currents,
                                    std::span<const int> labels, double i_th,
                                    std::uint64_t seed, int jobs = 0);

/// Pearson correlation over (merit, transient accuracy) pairs. Throws when
/// fewer than 3 pairs or when either series has zero variance.
double merit_accuracy_correlation(std::span<const std::pair<double, double>> pairs);

}  // namespace snn
