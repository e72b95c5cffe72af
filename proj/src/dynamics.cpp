#include "snn/dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "snn/error.hpp"

namespace snn {

void NeuronParams::validate() const {
  if (!(c > 0)) throw ConfigError("neuron.c: must be > 0");
  if (!(g > 0)) throw ConfigError("neuron.g: must be > 0");
  if (!(v_t > e_l)) throw ConfigError("neuron.v_t: must exceed neuron.e_l");
}

void SynapseParams::validate() const {
  if (!(i0 > 0)) throw ConfigError("synapse.i0: must be > 0");
  if (!(tau_s > 0)) throw ConfigError("synapse.tau_s: must be > 0");
  if (!(tau_m > tau_s)) throw ConfigError("synapse.tau_m: must exceed tau_s");
}

double SynapseParams::kernel(double elapsed) const {
  if (elapsed < 0) return 0.0;
  return std::exp(-elapsed / tau_m) - std::exp(-elapsed / tau_s);
}

double SynapseParams::peak_time() const {
  return tau_m * tau_s / (tau_m - tau_s) * std::log(tau_m / tau_s);
}

bool lif_step(NeuronState& state, double i, double dt, double now, const NeuronParams& p) {
  if (!std::isfinite(i) || !std::isfinite(state.v)) {
    throw SimulationFault("lif_step: non-finite membrane potential or input current at t=" +
                          std::to_string(now));
  }
  state.v += (dt / p.c) * (-p.g * (state.v - p.e_l) + i);
  if (state.v < p.e_l) state.v = p.e_l;  // inhibition cannot hyperpolarize below rest
  if (state.v >= p.v_t) {
    state.v = p.e_l;
    state.spike_times.push_back(now);
    return true;
  }
  return false;
}

double threshold_current(const NeuronParams& p) { return p.g * (p.v_t - p.e_l); }

double analytic_isi(const NeuronParams& p, double i) {
  const double i_th = threshold_current(p);
  if (i <= i_th) return std::numeric_limits<double>::infinity();
  return (p.c / p.g) * std::log(i / (i - i_th));
}

double synapse_current(double w, const SynapseParams& p,
                       std::span<const double> spike_times, double t) {
  const double horizon = 10.0 * p.tau_m;
  double sum = 0.0;
  // spike lists are time-ordered; walk back from the most recent
  for (auto it = spike_times.rbegin(); it != spike_times.rend(); ++it) {
    const double elapsed = t - *it;
    if (elapsed < 0) continue;
    if (elapsed > horizon) break;
    sum += p.kernel(elapsed);
  }
  return w * p.i0 * sum;
}

}  // namespace snn
