#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "snn/dataset.hpp"
#include "snn/dynamics.hpp"
#include "snn/encoding.hpp"
#include "snn/plasticity.hpp"

namespace snn {

/// Two-layer topology: F*T input neurons fully connected to N output neurons
/// through plastic excitatory synapses; output neurons mutually connected in
/// pairs through fixed inhibitory lateral synapses (winner-take-all). During
/// training a negative bias current suppresses every output neuron except
/// the one matching the sample's class.
struct NetworkConfig {
  EncoderConfig encoder;
  int output_count = 0;  // N, one neuron per class

  NeuronParams input_neuron;
  NeuronParams output_neuron;  // v_t may be raised for the second layer

  SynapseParams excitatory;  // feedforward
  SynapseParams inhibitory = SynapseParams::default_inhibitory();  // lateral

  double lateral_weight = -1.0;   // fixed, < 0
  double bias_current = -3e-9;    // amperes, <= 0; applied to non-target outputs
  double dt = 0.1e-3;             // integration step, seconds

  std::size_t input_count(std::size_t feature_count) const {
    return feature_count * static_cast<std::size_t>(encoder.transforms_per_feature());
  }
  std::size_t excitatory_synapse_count(std::size_t feature_count) const {
    return input_count(feature_count) * static_cast<std::size_t>(output_count);
  }
  std::size_t lateral_synapse_count() const {
    return static_cast<std::size_t>(output_count) * (output_count - 1);
  }
  void validate() const;
};

struct TrainingSchedule {
  int epochs = 15;
  double exposure = 100e-3;  // seconds per sample presentation
  std::uint64_t seed = 0;    // recorded for provenance (split/init draw from it)
  bool snapshot_per_epoch = false;

  void validate() const;
};

enum class Outcome { kCorrect, kWrongSpike, kNoSpike, kMultiSpike };

const char* outcome_name(Outcome o);

struct RecognitionResult {
  std::vector<Outcome> outcomes;
  std::size_t correct = 0;
  double accuracy = 0.0;  // percent of the tested samples
};

struct TrainResult {
  WeightMatrix weights;
  std::vector<WeightMatrix> epoch_snapshots;  // filled when snapshot_per_epoch
};

/// Serial supervised training. Samples are presented round-robin across
/// classes (class1-sample1, class2-sample1, ...), each for schedule.exposure
/// with the bias applied to all non-target outputs; plasticity pairings are
/// applied online; all membrane state, spike history and synaptic traces are
/// cleared between presentations.
TrainResult train(const Dataset& dataset, const Split& split, const NetworkConfig& config,
                  const TrainingSchedule& schedule, const LearningParams& learning,
                  const NormalizationStats& stats, const WeightMatrix& initial);

/// Evaluation options; the defaults are the standard recognition test (zero
/// bias, lateral inhibition on). Overrides exist so tests can prove that the
/// recognition criterion is not secretly relying on supervision.
struct RecognitionOptions {
  double bias_current = 0.0;
  bool lateral_inhibition = true;
};

/// Standard transient recognition test over the whole dataset: a sample
/// counts as correct iff the target neuron fires at least once within the
/// exposure window and every other output neuron stays silent.
RecognitionResult test(const Dataset& dataset, const WeightMatrix& weights,
                       const NetworkConfig& config, const NormalizationStats& stats,
                       double exposure, const RecognitionOptions& options = {});

/// Recognition outcome of a single pre-encoded sample (used by test and by
/// the single-sample isolation property).
Outcome recognize_sample(const std::vector<double>& input_currents, int target,
                         const WeightMatrix& weights, const NetworkConfig& config,
                         double exposure, const RecognitionOptions& options = {});

}  // namespace snn
