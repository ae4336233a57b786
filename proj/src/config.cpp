#include "jqf/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "jqf/errors.hpp"

namespace jqf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using nlohmann::json;

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& required,
                const std::set<std::string>& optional) {
  if (!obj.is_object()) {
    throw SchemaError("config: '" + path + "' must be an object");
  }
  for (const auto& item : obj.items()) {
    if (required.count(item.key()) == 0 && optional.count(item.key()) == 0) {
      throw SchemaError("config: unknown key '" + join_path(path, item.key()) +
                        "'");
    }
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) {
      throw SchemaError("config: missing key '" + join_path(path, key) + "'");
    }
  }
}

double get_number(const json& obj, const std::string& path,
                  const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw SchemaError("config: '" + join_path(path, key) + "' must be a number");
  }
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw SchemaError("config: '" + join_path(path, key) +
                      "' must be an integer");
  }
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& path,
              const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_boolean()) {
    throw SchemaError("config: '" + join_path(path, key) + "' must be a bool");
  }
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path,
                       const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) {
    throw SchemaError("config: '" + join_path(path, key) + "' must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& obj, const std::string& path,
                                    const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_array() || v.empty()) {
    throw SchemaError("config: '" + join_path(path, key) +
                      "' must be a non-empty array of numbers");
  }
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw SchemaError("config: '" + join_path(path, key) +
                        "' must contain only numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

QubitBlock parse_qubit(const json& obj, const std::string& path) {
  check_keys(obj, path,
             {"frequency_GHz", "anharmonicity_MHz", "gamma_MHz", "phase_pi",
              "levels"},
             {});
  QubitBlock q;
  q.frequency_GHz = get_number(obj, path, "frequency_GHz");
  q.anharmonicity_MHz = get_number(obj, path, "anharmonicity_MHz");
  q.gamma_MHz = get_number(obj, path, "gamma_MHz");
  q.phase_pi = get_number(obj, path, "phase_pi");
  q.levels = get_int(obj, path, "levels");
  if (q.gamma_MHz < 0.0) {
    throw SchemaError("config: '" + path + ".gamma_MHz' must be >= 0");
  }
  if (q.levels < 2) {
    throw SchemaError("config: '" + path + ".levels' must be >= 2");
  }
  if (q.frequency_GHz <= 0.0) {
    throw SchemaError("config: '" + path + ".frequency_GHz' must be > 0");
  }
  return q;
}

DriveBlock parse_drive(const json& obj) {
  const std::string path = "drive";
  check_keys(obj, path, {"shape", "rabi_MHz", "frequency_GHz"},
             {"t0_ns", "t_on_ns", "sigma_ns"});
  DriveBlock d;
  d.shape = get_string(obj, path, "shape");
  d.rabi_MHz = get_number(obj, path, "rabi_MHz");
  d.frequency_GHz = get_number(obj, path, "frequency_GHz");
  if (obj.contains("t0_ns")) d.t0_ns = get_number(obj, path, "t0_ns");
  if (obj.contains("t_on_ns")) d.t_on_ns = get_number(obj, path, "t_on_ns");
  if (obj.contains("sigma_ns")) d.sigma_ns = get_number(obj, path, "sigma_ns");
  if (d.rabi_MHz < 0.0) {
    throw SchemaError("config: 'drive.rabi_MHz' must be >= 0");
  }
  const std::set<std::string> shapes{"cw", "step", "gaussian_ramp", "gaussian"};
  if (shapes.count(d.shape) == 0) {
    throw SchemaError("config: 'drive.shape' must be one of cw, step, "
                      "gaussian_ramp, gaussian");
  }
  if ((d.shape == "gaussian" || d.shape == "gaussian_ramp")) {
    if (!d.t0_ns) throw SchemaError("config: missing key 'drive.t0_ns'");
    if (!d.sigma_ns) throw SchemaError("config: missing key 'drive.sigma_ns'");
    if (*d.sigma_ns <= 0.0) {
      throw SchemaError("config: 'drive.sigma_ns' must be > 0");
    }
  }
  if (d.shape == "step" && !d.t_on_ns) {
    throw SchemaError("config: missing key 'drive.t_on_ns'");
  }
  return d;
}

SimBlock parse_sim(const json& obj) {
  const std::string path = "sim";
  check_keys(obj, path, {"t_end_ns"},
             {"t_start_ns", "dt_ns", "record_stride", "frame", "include_jqf"});
  SimBlock s;
  s.t_end_ns = get_number(obj, path, "t_end_ns");
  if (obj.contains("t_start_ns")) s.t_start_ns = get_number(obj, path, "t_start_ns");
  if (obj.contains("dt_ns")) s.dt_ns = get_number(obj, path, "dt_ns");
  if (obj.contains("record_stride")) s.record_stride = get_int(obj, path, "record_stride");
  if (obj.contains("frame")) s.frame = get_string(obj, path, "frame");
  if (obj.contains("include_jqf")) s.include_jqf = get_bool(obj, path, "include_jqf");
  if (s.dt_ns <= 0.0) throw SchemaError("config: 'sim.dt_ns' must be > 0");
  if (s.t_end_ns <= s.t_start_ns) {
    throw SchemaError("config: 'sim.t_end_ns' must be > 'sim.t_start_ns'");
  }
  if (s.record_stride < 1) {
    throw SchemaError("config: 'sim.record_stride' must be >= 1");
  }
  if (s.frame != "rotating-rwa" && s.frame != "lab") {
    throw SchemaError("config: 'sim.frame' must be 'rotating-rwa' or 'lab'");
  }
  return s;
}

ExperimentBlock parse_experiment(const json& obj) {
  const std::string path = "experiment";
  check_keys(obj, path, {"name"},
             {"alpha_list_MHz", "mode", "sigma_ns", "sigma_list_ns",
              "n_jqf_list", "bracket_MHz"});
  ExperimentBlock e;
  e.name = get_string(obj, path, "name");
  const std::set<std::string> names{"simulate",   "resonance",     "scan-alpha",
                                    "optimize-pulse", "sweep-sigma", "compare",
                                    "njqf",       "analytic"};
  if (names.count(e.name) == 0) {
    throw SchemaError("config: unknown experiment name '" + e.name + "'");
  }
  if (obj.contains("alpha_list_MHz")) {
    e.alpha_list_MHz = get_number_list(obj, path, "alpha_list_MHz");
  }
  if (obj.contains("mode")) {
    e.scan_mode = get_string(obj, path, "mode");
    if (e.scan_mode != "cw" && e.scan_mode != "pulse") {
      throw SchemaError("config: 'experiment.mode' must be 'cw' or 'pulse'");
    }
  }
  if (obj.contains("sigma_ns")) {
    e.sigma_ns = get_number(obj, path, "sigma_ns");
    if (e.sigma_ns <= 0.0) {
      throw SchemaError("config: 'experiment.sigma_ns' must be > 0");
    }
  }
  if (obj.contains("sigma_list_ns")) {
    e.sigma_list_ns = get_number_list(obj, path, "sigma_list_ns");
    for (double s : e.sigma_list_ns) {
      if (s <= 0.0) {
        throw SchemaError("config: 'experiment.sigma_list_ns' must be > 0");
      }
    }
  }
  if (obj.contains("n_jqf_list")) {
    const auto& v = obj.at("n_jqf_list");
    if (!v.is_array() || v.empty()) {
      throw SchemaError("config: 'experiment.n_jqf_list' must be a non-empty array");
    }
    for (const auto& x : v) {
      if (!x.is_number_integer() || x.get<int>() < 2) {
        throw SchemaError("config: 'experiment.n_jqf_list' entries must be integers >= 2");
      }
      e.n_jqf_list.push_back(x.get<int>());
    }
  }
  if (obj.contains("bracket_MHz")) {
    const auto bracket = get_number_list(obj, path, "bracket_MHz");
    if (bracket.size() != 2 || bracket[0] >= bracket[1]) {
      throw SchemaError("config: 'experiment.bracket_MHz' must be [lo, hi] with lo < hi");
    }
    e.bracket_MHz = std::make_pair(bracket[0], bracket[1]);
  }
  // Per-experiment requirements beyond defaults.
  if (e.name == "scan-alpha" && e.alpha_list_MHz.empty()) {
    throw SchemaError("config: missing key 'experiment.alpha_list_MHz'");
  }
  if (e.name == "sweep-sigma" && e.sigma_list_ns.empty()) {
    throw SchemaError("config: missing key 'experiment.sigma_list_ns'");
  }
  if (e.name == "njqf" && e.n_jqf_list.empty()) {
    e.n_jqf_list = {2, 3, 4};
  }
  return e;
}

TransmonSpec to_spec(const QubitBlock& q) {
  TransmonSpec spec;
  spec.omega = kTwoPi * q.frequency_GHz;
  spec.alpha = kTwoPi * q.anharmonicity_MHz * 1e-3;
  spec.gamma = kTwoPi * q.gamma_MHz * 1e-3;
  spec.phase = std::numbers::pi * q.phase_pi;
  spec.n_levels = q.levels;
  return spec;
}

}  // namespace

TransmonSpec RunConfig::dq_spec() const { return to_spec(dq); }
TransmonSpec RunConfig::jqf_spec() const { return to_spec(jqf); }

Frame RunConfig::frame() const {
  return sim.frame == "lab" ? Frame::Lab : Frame::RotatingRwa;
}

double RunConfig::omega_d() const {
  if (!drive) throw SchemaError("config: missing block 'drive'");
  return kTwoPi * drive->frequency_GHz;
}

double RunConfig::drive_e_amp() const {
  if (!drive) throw SchemaError("config: missing block 'drive'");
  const double gamma1 = dq_spec().gamma;
  if (gamma1 <= 0.0) {
    throw SchemaError(
        "config: 'qubits.dq.gamma_MHz' must be > 0 to set the drive "
        "amplitude via rabi_MHz");
  }
  return (kTwoPi * drive->rabi_MHz * 1e-3) / std::sqrt(2.0 * gamma1);
}

DriveEnvelope RunConfig::envelope() const {
  if (!drive) throw SchemaError("config: missing block 'drive'");
  const double e_amp = drive_e_amp();
  if (drive->shape == "cw") return CwEnvelope{e_amp};
  if (drive->shape == "step") return StepEnvelope{e_amp, *drive->t_on_ns};
  if (drive->shape == "gaussian_ramp") {
    return GaussianRampEnvelope{e_amp, *drive->t0_ns, *drive->sigma_ns};
  }
  return GaussianEnvelope{e_amp, *drive->t0_ns, *drive->sigma_ns};
}

RunConfig parse_config_json(const nlohmann::json& j) {
  check_keys(j, "", {"schema_version", "qubits", "sim", "experiment"},
             {"drive", "output"});
  RunConfig cfg;
  cfg.raw = j;

  if (!j.at("schema_version").is_number_integer() ||
      j.at("schema_version").get<int>() != 1) {
    throw SchemaError("config: 'schema_version' must be the integer 1");
  }

  const auto& qubits = j.at("qubits");
  check_keys(qubits, "qubits", {"dq", "jqf"}, {});
  cfg.dq = parse_qubit(qubits.at("dq"), "qubits.dq");
  cfg.jqf = parse_qubit(qubits.at("jqf"), "qubits.jqf");

  if (j.contains("drive")) cfg.drive = parse_drive(j.at("drive"));
  cfg.sim = parse_sim(j.at("sim"));
  cfg.experiment = parse_experiment(j.at("experiment"));

  if (j.contains("output")) {
    check_keys(j.at("output"), "output", {"directory"}, {});
    cfg.output_dir = get_string(j.at("output"), "output", "directory");
  }

  const bool needs_drive =
      cfg.experiment.name == "simulate" || cfg.experiment.name == "compare" ||
      cfg.experiment.name == "resonance" ||
      (cfg.experiment.name == "scan-alpha" && cfg.experiment.scan_mode == "cw");
  if (needs_drive && !cfg.drive) {
    throw SchemaError("config: experiment '" + cfg.experiment.name +
                      "' requires a 'drive' block");
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaError("config: cannot open file '" + path + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("config: JSON parse error in '" + path +
                      "': " + e.what());
  }
  return parse_config_json(j);
}

}  // namespace jqf
