#pragma once

#include <span>
#include <vector>

namespace snn {

/// Leaky integrate-and-fire membrane constants. The membrane is an RC leak:
/// C dV/dt = -g (V - E_l) + I, spiking and resetting to E_l at V_t.
struct NeuronParams {
  double c = 300e-12;   // capacitance, farads
  double g = 30e-9;     // leak conductance, siemens
  double e_l = -70e-3;  // resting potential, volts
  double v_t = 20e-3;   // threshold potential, volts

  void validate() const;  // c > 0, g > 0, v_t > e_l
};

enum class Polarity { kExcitatory, kInhibitory };

/// Double-exponential synaptic current pulse constants:
/// I(t) = w * i0 * (exp(-(t-ts)/tau_m) - exp(-(t-ts)/tau_s)), tau_m > tau_s.
/// Excitatory synapses carry w > 0, inhibitory w < 0.
struct SynapseParams {
  double i0 = 10e-12;    // scale current, amperes
  double tau_m = 10e-3;  // decay time constant, seconds
  double tau_s = 2.5e-3; // rise time constant, seconds
  Polarity polarity = Polarity::kExcitatory;

  void validate() const;  // tau_m > tau_s > 0, i0 > 0

  /// Unit kernel exp(-t/tau_m) - exp(-t/tau_s) for elapsed >= 0, else 0.
  double kernel(double elapsed) const;

  /// Time after a spike at which the kernel peaks.
  double peak_time() const;

  static SynapseParams default_inhibitory() {
    return {0.1e-9, 50e-3, 12.5e-3, Polarity::kInhibitory};
  }
};

/// Mutable state of one LIF neuron within a simulation.
struct NeuronState {
  double v = 0.0;
  std::vector<double> spike_times;

  void reset(const NeuronParams& p) {
    v = p.e_l;
    spike_times.clear();
  }
};

/// One forward-Euler step of the membrane equation. `now` is the timestamp
/// recorded if the step crosses threshold (the caller passes the step's end
/// time). The potential is floored at E_l and reset to E_l on a spike.
/// Returns true when the neuron spiked. Throws SimulationFault on
/// non-finite input or state.
bool lif_step(NeuronState& state, double i, double dt, double now, const NeuronParams& p);

/// Minimum constant current that can ever drive the neuron to threshold:
/// g * (V_t - E_l). At or below it the membrane settles short of V_t.
double threshold_current(const NeuronParams& p);

/// Closed-form inter-spike interval under a constant current:
/// (C/g) * ln(I / (I - I_th)). Returns +infinity when I <= I_th ("never").
/// Used as the integration-accuracy oracle for lif_step.
double analytic_isi(const NeuronParams& p, double i);

/// Superposed synaptic current at time t from the given pre-synaptic spike
/// train. Spikes later than t contribute nothing; spikes older than
/// 10 * tau_m are dropped (their kernel is below e^-10).
double synapse_current(double w, const SynapseParams& p,
                       std::span<const double> spike_times, double t);

}  // namespace snn
