#include "snn/network.hpp"

#include <cmath>
#include <string>

#include "snn/error.hpp"

namespace snn {

void NetworkConfig::validate() const {
  encoder.validate();
  if (output_count < 2) throw ConfigError("network.output_count: need at least 2 classes");
  input_neuron.validate();
  output_neuron.validate();
  excitatory.validate();
  inhibitory.validate();
  if (!(lateral_weight < 0)) throw ConfigError("network.lateral_weight: must be < 0");
  if (bias_current > 0) throw ConfigError("network.bias: must be <= 0");
  if (!(dt > 0)) throw ConfigError("schedule.dt: must be > 0");
}

void TrainingSchedule::validate() const {
  if (epochs < 0) throw ConfigError("schedule.epochs: must be >= 0");
  if (!(exposure > 0)) throw ConfigError("schedule.exposure: must be > 0");
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kCorrect: return "correct";
    case Outcome::kWrongSpike: return "wrong-spike";
    case Outcome::kNoSpike: return "no-spike";
    case Outcome::kMultiSpike: return "multi-spike";
  }
  return "?";
}

namespace {

/// One network instance: neuron states plus the double-exponential synaptic
/// current traces. The feedforward current into output j is
/// i0_exc * (exc_m[j] - exc_s[j]) where the traces decay with tau_m / tau_s
/// per step and collect the synapse weight whenever the pre-neuron spikes;
/// this reproduces the kernel superposition exactly with O(1) work per step.
/// Lateral inhibition uses the same scheme with the (negative) fixed lateral
/// weight. A spike recorded in step k enters the traces after the step, so
/// it contributes current from step k+1 onward.
class Simulation {
 public:
  Simulation(const NetworkConfig& config, std::size_t input_count)
      : config_(config),
        inputs_(input_count),
        outputs_(static_cast<std::size_t>(config.output_count)),
        exc_m_(outputs_.size(), 0.0),
        exc_s_(outputs_.size(), 0.0),
        inh_m_(outputs_.size(), 0.0),
        inh_s_(outputs_.size(), 0.0),
        pairing_(input_count * outputs_.size()) {
    const double dt = config.dt;
    exc_decay_m_ = std::exp(-dt / config.excitatory.tau_m);
    exc_decay_s_ = std::exp(-dt / config.excitatory.tau_s);
    inh_decay_m_ = std::exp(-dt / config.inhibitory.tau_m);
    inh_decay_s_ = std::exp(-dt / config.inhibitory.tau_s);
  }

  void reset() {
    for (auto& n : inputs_) n.reset(config_.input_neuron);
    for (auto& n : outputs_) n.reset(config_.output_neuron);
    std::fill(exc_m_.begin(), exc_m_.end(), 0.0);
    std::fill(exc_s_.begin(), exc_s_.end(), 0.0);
    std::fill(inh_m_.begin(), inh_m_.end(), 0.0);
    std::fill(inh_s_.begin(), inh_s_.end(), 0.0);
    for (auto& p : pairing_) p.reset();
  }

  /// Present one sample for `exposure`. target >= 1 enables supervision
  /// (bias on every non-target output). learning == nullptr disables
  /// plasticity (test mode). bias/lateral let the caller override the
  /// supervision current and disable the lateral synapses.
  void expose(const std::vector<double>& input_currents, int target,
              const LearningParams* learning, WeightMatrix* weights, double exposure,
              double bias, bool lateral) {
    reset();
    const double dt = config_.dt;
    const auto steps = static_cast<std::size_t>(std::llround(exposure / dt));
    const std::size_t n_in = inputs_.size();
    const std::size_t n_out = outputs_.size();
    spiked_inputs_.clear();
    spiked_outputs_.clear();

    for (std::size_t k = 0; k < steps; ++k) {
      const double t_next = static_cast<double>(k + 1) * dt;
      spiked_inputs_.clear();
      spiked_outputs_.clear();

      // input layer first: constant encoded currents
      for (std::size_t i = 0; i < n_in; ++i) {
        if (lif_step(inputs_[i], input_currents[i], dt, t_next, config_.input_neuron)) {
          spiked_inputs_.push_back(i);
        }
      }

      // output layer: feedforward + lateral traces evaluated at step start
      for (std::size_t j = 0; j < n_out; ++j) {
        double current = config_.excitatory.i0 * (exc_m_[j] - exc_s_[j]);
        if (lateral) {
          current += config_.inhibitory.i0 * (inh_m_[j] - inh_s_[j]);
        }
        if (target >= 1 && static_cast<int>(j) != target - 1) {
          current += bias;
        }
        if (lif_step(outputs_[j], current, dt, t_next, config_.output_neuron)) {
          spiked_outputs_.push_back(j);
        }
      }

      // online plasticity, pre events before post events within the step
      if (learning != nullptr) {
        for (std::size_t i : spiked_inputs_) {
          for (std::size_t j = 0; j < n_out; ++j) {
            auto& pair = pairing_[i * n_out + j];
            weights->at(i, j) = pair.on_pre(t_next, weights->at(i, j), *learning);
          }
        }
        for (std::size_t j : spiked_outputs_) {
          for (std::size_t i = 0; i < n_in; ++i) {
            auto& pair = pairing_[i * n_out + j];
            weights->at(i, j) = pair.on_post(t_next, weights->at(i, j), *learning);
          }
        }
      }

      // advance traces, then enqueue this step's spikes for the next step
      for (std::size_t j = 0; j < n_out; ++j) {
        exc_m_[j] *= exc_decay_m_;
        exc_s_[j] *= exc_decay_s_;
        inh_m_[j] *= inh_decay_m_;
        inh_s_[j] *= inh_decay_s_;
      }
      for (std::size_t i : spiked_inputs_) {
        for (std::size_t j = 0; j < n_out; ++j) {
          const double w = weights->at(i, j);
          exc_m_[j] += w;
          exc_s_[j] += w;
        }
      }
      for (std::size_t j : spiked_outputs_) {
        for (std::size_t o = 0; o < n_out; ++o) {
          if (o == j) continue;
          inh_m_[o] += config_.lateral_weight;
          inh_s_[o] += config_.lateral_weight;
        }
      }
    }
  }

  const std::vector<NeuronState>& outputs() const { return outputs_; }

 private:
  const NetworkConfig& config_;
  std::vector<NeuronState> inputs_;
  std::vector<NeuronState> outputs_;
  std::vector<double> exc_m_, exc_s_;  // feedforward traces per output
  std::vector<double> inh_m_, inh_s_;  // lateral traces per output
  std::vector<PairingState> pairing_;  // per synapse, row-major like weights
  double exc_decay_m_ = 0.0, exc_decay_s_ = 0.0;
  double inh_decay_m_ = 0.0, inh_decay_s_ = 0.0;
  std::vector<std::size_t> spiked_inputs_;
  std::vector<std::size_t> spiked_outputs_;
};

Outcome classify_outputs(const std::vector<NeuronState>& outputs, int target) {
  const std::size_t target_idx = static_cast<std::size_t>(target - 1);
  const bool target_fired = !outputs[target_idx].spike_times.empty();
  bool other_fired = false;
  for (std::size_t j = 0; j < outputs.size(); ++j) {
    if (j != target_idx && !outputs[j].spike_times.empty()) {
      other_fired = true;
      break;
    }
  }
  if (target_fired && !other_fired) return Outcome::kCorrect;
  if (target_fired) return Outcome::kMultiSpike;
  if (other_fired) return Outcome::kWrongSpike;
  return Outcome::kNoSpike;
}

// round-robin across classes: class1-sample1, class2-sample1, ...
std::vector<std::size_t> interleave_training_order(const Split& split) {
  std::vector<std::size_t> order;
  std::size_t longest = 0;
  for (const auto& c : split.train_per_class) longest = std::max(longest, c.size());
  for (std::size_t p = 0; p < longest; ++p) {
    for (const auto& c : split.train_per_class) {
      if (p < c.size()) order.push_back(c[p]);
    }
  }
  return order;
}

}  // namespace

TrainResult train(const Dataset& dataset, const Split& split, const NetworkConfig& config,
                  const TrainingSchedule& schedule, const LearningParams& learning,
                  const NormalizationStats& stats, const WeightMatrix& initial) {
  config.validate();
  schedule.validate();
  learning.validate();
  const std::size_t n_in = config.input_count(dataset.feature_count);
  if (initial.rows != n_in || initial.cols != static_cast<std::size_t>(config.output_count)) {
    throw ConfigError("train: initial weight matrix shape " + std::to_string(initial.rows) +
                      "x" + std::to_string(initial.cols) + " does not match topology " +
                      std::to_string(n_in) + "x" + std::to_string(config.output_count));
  }

  TrainResult result;
  result.weights = initial;

  const auto order = interleave_training_order(split);
  std::vector<std::vector<double>> encoded(order.size());
  std::vector<int> targets(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& sample = dataset.samples[order[k]];
    encoded[k] = encode_sample(sample.features, stats, config.encoder);
    targets[k] = sample.label;
  }

  Simulation sim(config, n_in);
  for (int epoch = 0; epoch < schedule.epochs; ++epoch) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      try {
        sim.expose(encoded[k], targets[k], &learning, &result.weights, schedule.exposure,
                   config.bias_current, /*lateral=*/true);
      } catch (const SimulationFault& fault) {
        throw SimulationFault("epoch " + std::to_string(epoch + 1) + ", sample " +
                              std::to_string(order[k]) + ": " + fault.what());
      }
    }
    if (schedule.snapshot_per_epoch) {
      result.epoch_snapshots.push_back(result.weights);
    }
  }
  return result;
}

Outcome recognize_sample(const std::vector<double>& input_currents, int target,
                         const WeightMatrix& weights, const NetworkConfig& config,
                         double exposure, const RecognitionOptions& options) {
  Simulation sim(config, weights.rows);
  // bias (normally zero) applies to non-target outputs, mirroring training
  WeightMatrix scratch = weights;  // expose() takes mutable weights; no learning occurs
  sim.expose(input_currents, options.bias_current != 0.0 ? target : 0, nullptr, &scratch,
             exposure, options.bias_current, options.lateral_inhibition);
  return classify_outputs(sim.outputs(), target);
}

RecognitionResult test(const Dataset& dataset, const WeightMatrix& weights,
                       const NetworkConfig& config, const NormalizationStats& stats,
                       double exposure, const RecognitionOptions& options) {
  config.validate();
  const std::size_t n_in = config.input_count(dataset.feature_count);
  if (weights.rows != n_in || weights.cols != static_cast<std::size_t>(config.output_count)) {
    throw ConfigError("test: weight matrix shape " + std::to_string(weights.rows) + "x" +
                      std::to_string(weights.cols) + " does not match topology " +
                      std::to_string(n_in) + "x" + std::to_string(config.output_count));
  }

  RecognitionResult result;
  result.outcomes.reserve(dataset.samples.size());
  Simulation sim(config, n_in);
  WeightMatrix scratch = weights;
  for (const auto& sample : dataset.samples) {
    const auto currents = encode_sample(sample.features, stats, config.encoder);
    sim.expose(currents, options.bias_current != 0.0 ? sample.label : 0, nullptr, &scratch,
               exposure, options.bias_current, options.lateral_inhibition);
    const Outcome outcome = classify_outputs(sim.outputs(), sample.label);
    result.outcomes.push_back(outcome);
    if (outcome == Outcome::kCorrect) ++result.correct;
  }
  result.accuracy =
      100.0 * static_cast<double>(result.correct) / static_cast<double>(dataset.samples.size());
  return result;
}

}  // namespace snn
