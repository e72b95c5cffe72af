#include "snn/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "snn/error.hpp"

namespace snn {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

bool reserved_prefix(const std::string& key) {
  return key.rfind("result.", 0) == 0 || key.rfind("timing.", 0) == 0 ||
         key.rfind("report.", 0) == 0;
}

}  // namespace

ConfigMap ConfigMap::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str());
}

ConfigMap ConfigMap::from_string(const std::string& text) {
  ConfigMap map;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    if (map.values_.count(key)) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    map.values_[key] = value;
  }
  return map;
}

bool ConfigMap::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ConfigMap::get_string(const std::string& key) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key + ": required key missing");
  consumed_.insert(key);
  return it->second;
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) {
  consumed_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double ConfigMap::get_quantity(const std::string& key, Dimension dim, double fallback) {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return parse_quantity(it->second, dim, key);
}

double ConfigMap::get_quantity(const std::string& key, Dimension dim) {
  return parse_quantity(get_string(key), dim, key);
}

double ConfigMap::get_double(const std::string& key, double fallback) {
  return get_quantity(key, Dimension::kDimensionless, fallback);
}

long ConfigMap::get_int(const std::string& key, long fallback) {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(it->second, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected integer, got '" + it->second + "'");
  }
  if (pos != it->second.size()) {
    throw ConfigError(key + ": expected integer, got '" + it->second + "'");
  }
  return v;
}

std::uint64_t ConfigMap::get_seed(const std::string& key, std::uint64_t fallback) {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stoull(it->second, nullptr, 0);  // accepts decimal and 0x hex
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected seed integer, got '" + it->second + "'");
  }
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError(key + ": expected true/false, got '" + it->second + "'");
}

std::vector<std::string> ConfigMap::get_list(const std::string& key,
                                             const std::vector<std::string>& fallback) {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<std::string> out;
  std::string token;
  std::istringstream ss(it->second);
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

void ConfigMap::reject_unknown_keys() const {
  for (const auto& [key, _] : values_) {
    if (!consumed_.count(key) && !reserved_prefix(key)) {
      throw ConfigError(key + ": unknown config key");
    }
  }
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  ConfigMap map = ConfigMap::from_file(path);
  auto config = from_config(map);
  map.reject_unknown_keys();
  return config;
}

ExperimentConfig ExperimentConfig::from_config(ConfigMap& map) {
  ExperimentConfig c;
  c.data_file = map.get_string("data.file");
  c.data_format = map.get_string("data.format");
  const long per_class = map.get_int("data.train_per_class", 0);
  if (per_class <= 0) throw ConfigError("data.train_per_class: must be >= 1");
  c.train_per_class = static_cast<std::size_t>(per_class);

  auto& enc = c.network.encoder;
  const std::string mode = map.get_string("encoder.mode", "linear");
  if (mode == "linear") {
    enc.mode = EncoderConfig::Mode::kLinear;
    const auto names =
        map.get_list("encoder.sensors", {"high", "low", "intermediate", "extreme"});
    enc.sensors.clear();
    for (const auto& n : names) enc.sensors.push_back(linear_sensor_from_name(n));
  } else if (mode == "gaussian") {
    enc.mode = EncoderConfig::Mode::kGaussian;
    enc.rbf_count = static_cast<int>(map.get_int("encoder.rbf_count", 0));
    enc.rbf_sigma = map.get_double("encoder.rbf_sigma", 0.0);
  } else {
    throw ConfigError("encoder.mode: expected linear|gaussian, got '" + mode + "'");
  }
  enc.i_max = map.get_quantity("encoder.i_max", Dimension::kCurrent, 4e-9);

  auto& n1 = c.network.input_neuron;
  n1.c = map.get_quantity("neuron.c", Dimension::kCapacitance, 300e-12);
  n1.g = map.get_quantity("neuron.g", Dimension::kConductance, 30e-9);
  n1.e_l = map.get_quantity("neuron.e_l", Dimension::kVoltage, -70e-3);
  n1.v_t = map.get_quantity("neuron.v_t", Dimension::kVoltage, 20e-3);
  c.network.output_neuron = n1;
  c.network.output_neuron.v_t =
      map.get_quantity("neuron.v_t_output", Dimension::kVoltage, n1.v_t);

  auto& exc = c.network.excitatory;
  exc.polarity = Polarity::kExcitatory;
  exc.i0 = map.get_quantity("synapse.exc.i0", Dimension::kCurrent, 10e-12);
  exc.tau_m = map.get_quantity("synapse.exc.tau_m", Dimension::kTime, 10e-3);
  exc.tau_s = map.get_quantity("synapse.exc.tau_s", Dimension::kTime, 2.5e-3);
  auto& inh = c.network.inhibitory;
  inh.polarity = Polarity::kInhibitory;
  inh.i0 = map.get_quantity("synapse.inh.i0", Dimension::kCurrent, 0.1e-9);
  inh.tau_m = map.get_quantity("synapse.inh.tau_m", Dimension::kTime, 50e-3);
  inh.tau_s = map.get_quantity("synapse.inh.tau_s", Dimension::kTime, 12.5e-3);

  c.network.lateral_weight = map.get_double("network.lateral_weight", -1.0);
  c.network.bias_current = map.get_quantity("network.bias", Dimension::kCurrent, -3e-9);
  c.network.dt = map.get_quantity("schedule.dt", Dimension::kTime, 0.1e-3);

  auto& lp = c.learning;
  lp.a_up = map.get_double("learning.a_up", 5.0);
  lp.a_down = map.get_double("learning.a_down", -10.0);
  lp.mu = map.get_double("learning.mu", 2.0);
  lp.tau_up = map.get_quantity("learning.tau_up", Dimension::kTime, 10e-3);
  lp.tau_down = map.get_quantity("learning.tau_down", Dimension::kTime, 20e-3);
  lp.w_max = map.get_double("learning.w_max", 500.0);
  c.init_mean_fraction = map.get_double("learning.init_mean_fraction", 0.4);
  c.init_spread_fraction = map.get_double("learning.init_spread_fraction", 0.1);
  if (c.init_mean_fraction < 0 || c.init_mean_fraction > 1) {
    throw ConfigError("learning.init_mean_fraction: must lie in [0, 1]");
  }

  c.schedule.epochs = static_cast<int>(map.get_int("schedule.epochs", 15));
  c.schedule.exposure = map.get_quantity("schedule.exposure", Dimension::kTime, 100e-3);

  c.run_count = static_cast<int>(map.get_int("run.count", 10));
  if (c.run_count < 1) throw ConfigError("run.count: must be >= 1");
  c.master_seed = map.get_seed("run.seed", 1);
  c.jobs = static_cast<int>(map.get_int("run.jobs", 0));
  c.schedule.seed = c.master_seed;

  c.expect_accuracy = map.get_double("expect.accuracy", -1.0);
  c.expect_tolerance = map.get_double("expect.tolerance", 0.0);

  c.learning.validate();
  c.schedule.validate();
  c.network.encoder.validate();
  return c;
}

std::string ExperimentConfig::echo() const {
  std::ostringstream out;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "data.file = " << data_file.string() << "\n";
  out << "data.format = " << data_format << "\n";
  out << "data.train_per_class = " << train_per_class << "\n";
  const auto& enc = network.encoder;
  if (enc.mode == EncoderConfig::Mode::kLinear) {
    out << "encoder.mode = linear\n";
    out << "encoder.sensors = ";
    for (std::size_t k = 0; k < enc.sensors.size(); ++k) {
      out << linear_sensor_name(enc.sensors[k]) << (k + 1 < enc.sensors.size() ? "," : "");
    }
    out << "\n";
  } else {
    out << "encoder.mode = gaussian\n";
    out << "encoder.rbf_count = " << enc.rbf_count << "\n";
    out << "encoder.rbf_sigma = " << num(enc.rbf_sigma) << "\n";
  }
  out << "encoder.i_max = " << format_quantity(enc.i_max, Dimension::kCurrent) << "\n";
  out << "neuron.c = " << format_quantity(network.input_neuron.c, Dimension::kCapacitance) << "\n";
  out << "neuron.g = " << format_quantity(network.input_neuron.g, Dimension::kConductance) << "\n";
  out << "neuron.e_l = " << format_quantity(network.input_neuron.e_l, Dimension::kVoltage) << "\n";
  out << "neuron.v_t = " << format_quantity(network.input_neuron.v_t, Dimension::kVoltage) << "\n";
  out << "neuron.v_t_output = " << format_quantity(network.output_neuron.v_t, Dimension::kVoltage)
      << "\n";
  out << "synapse.exc.i0 = " << format_quantity(network.excitatory.i0, Dimension::kCurrent) << "\n";
  out << "synapse.exc.tau_m = " << format_quantity(network.excitatory.tau_m, Dimension::kTime)
      << "\n";
  out << "synapse.exc.tau_s = " << format_quantity(network.excitatory.tau_s, Dimension::kTime)
      << "\n";
  out << "synapse.inh.i0 = " << format_quantity(network.inhibitory.i0, Dimension::kCurrent) << "\n";
  out << "synapse.inh.tau_m = " << format_quantity(network.inhibitory.tau_m, Dimension::kTime)
      << "\n";
  out << "synapse.inh.tau_s = " << format_quantity(network.inhibitory.tau_s, Dimension::kTime)
      << "\n";
  out << "network.lateral_weight = " << num(network.lateral_weight) << "\n";
  out << "network.bias = " << format_quantity(network.bias_current, Dimension::kCurrent) << "\n";
  out << "schedule.dt = " << format_quantity(network.dt, Dimension::kTime) << "\n";
  out << "learning.a_up = " << num(learning.a_up) << "\n";
  out << "learning.a_down = " << num(learning.a_down) << "\n";
  out << "learning.mu = " << num(learning.mu) << "\n";
  out << "learning.tau_up = " << format_quantity(learning.tau_up, Dimension::kTime) << "\n";
  out << "learning.tau_down = " << format_quantity(learning.tau_down, Dimension::kTime) << "\n";
  out << "learning.w_max = " << num(learning.w_max) << "\n";
  out << "learning.init_mean_fraction = " << num(init_mean_fraction) << "\n";
  out << "learning.init_spread_fraction = " << num(init_spread_fraction) << "\n";
  out << "schedule.epochs = " << schedule.epochs << "\n";
  out << "schedule.exposure = " << format_quantity(schedule.exposure, Dimension::kTime) << "\n";
  out << "run.count = " << run_count << "\n";
  out << "run.seed = " << master_seed << "\n";
  out << "run.jobs = " << jobs << "\n";
  if (expect_accuracy >= 0) {
    out << "expect.accuracy = " << num(expect_accuracy) << "\n";
    out << "expect.tolerance = " << num(expect_tolerance) << "\n";
  }
  return out.str();
}

}  // namespace snn
