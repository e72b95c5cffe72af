#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

namespace snn {

/// Saturating supervised-Hebbian update:
///   dt > 0:  dw = a_up   * (1 - w/w_max)^mu * exp(-dt/tau_up)
///   dt < 0:  dw = a_down * (w/w_max)^mu     * exp( dt/tau_down)
/// The (.)^mu factors pin the update to zero at the rails, mimicking
/// conductance saturation of resistive memory.
struct LearningParams {
  double a_up = 5.0;      // potentiation amplitude, > 0
  double a_down = -10.0;  // depression amplitude, < 0
  double mu = 2.0;        // saturation exponent, > 1
  double tau_up = 10e-3;  // seconds
  double tau_down = 20e-3;
  double w_max = 500.0;

  void validate() const;
};

/// Weight change for one causal (dt > 0) or anti-causal (dt < 0) spike pair,
/// dt = t_post - t_pre. dt == 0 produces no update. The caller clamps
/// w + dw into [0, w_max].
double delta_w(double w, double dt, const LearningParams& params);

inline double clamp_weight(double w, const LearningParams& params) {
  if (w < 0.0) return 0.0;
  if (w > params.w_max) return params.w_max;
  return w;
}

/// Online nearest-neighbor pairing state for one synapse. Each spike takes
/// part in at most one causal and one anti-causal pairing: a post spike
/// pairs with the latest pre spike not already used for potentiation, a pre
/// spike pairs with the latest post spike not already used for depression.
/// This bounds the update per spike and prevents runaway potentiation at
/// high rates.
struct PairingState {
  double last_pre = -std::numeric_limits<double>::infinity();
  double last_post = -std::numeric_limits<double>::infinity();
  bool pre_unpaired = false;
  bool post_unpaired = false;

  void reset() { *this = PairingState{}; }

  /// Pre-synaptic spike at time t: apply the anti-causal update against the
  /// latest unpaired post spike, then remember this spike. Returns the
  /// updated (clamped) weight.
  double on_pre(double t, double w, const LearningParams& params);

  /// Post-synaptic spike at time t: apply the causal update against the
  /// latest unpaired pre spike, then remember this spike.
  double on_post(double t, double w, const LearningParams& params);
};

/// Batch form: run the online pairing over two sorted spike trains (pre
/// events are processed before post events at equal times; equal-time pairs
/// have dt == 0 and produce no update). Returns the final weight.
double apply_pairing(std::span<const double> pre_spikes,
                     std::span<const double> post_spikes, double w,
                     const LearningParams& params);

/// Learned state of the excitatory feedforward synapses.
/// rows = input neurons (F*T), cols = output neurons (N), row-major.
struct WeightMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double w_max = 0.0;
  std::vector<double> w;

  double& at(std::size_t i, std::size_t j) { return w[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return w[i * cols + j]; }

  void validate() const;  // shape consistent, entries within [0, w_max]

  /// Plain-text interchange format: header "rows cols w_max", then one
  /// space-separated row per input neuron, full round-trip precision.
  void save(const std::filesystem::path& path) const;
  static WeightMatrix load(const std::filesystem::path& path);
};

/// Uniform initial weights around mean_fraction * w_max with half-width
/// spread_fraction * w_max, clamped into [0, w_max]. Deterministic per seed.
WeightMatrix init_weights(std::size_t rows, std::size_t cols, const LearningParams& params,
                          double mean_fraction, double spread_fraction, std::uint64_t seed);

}  // namespace snn
