#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jqf/drives.hpp"
#include "jqf/model.hpp"

namespace jqf {

// One qubit block of the config file. User-facing units are linear
// frequencies (GHz / MHz), phases in units of pi and times in ns; the
// angular conversion happens exactly once, in the *_spec() accessors.
struct QubitBlock {
  double frequency_GHz = 5.0;
  double anharmonicity_MHz = -300.0;
  double gamma_MHz = 0.0;
  double phase_pi = 0.0;
  int levels = 2;
};

struct DriveBlock {
  std::string shape = "cw";  // cw | step | gaussian_ramp | gaussian
  double rabi_MHz = 0.0;     // sqrt(2 gamma1) E / 2pi in MHz
  double frequency_GHz = 5.0;
  std::optional<double> t0_ns;
  std::optional<double> t_on_ns;
  std::optional<double> sigma_ns;
};

struct SimBlock {
  double t_start_ns = 0.0;
  double t_end_ns = 100.0;
  double dt_ns = 0.01;
  int record_stride = 10;
  std::string frame = "rotating-rwa";  // rotating-rwa | lab
  bool include_jqf = true;
};

struct ExperimentBlock {
  std::string name = "simulate";
  std::vector<double> alpha_list_MHz;             // scan-alpha
  std::string scan_mode = "cw";                   // scan-alpha: cw | pulse
  double sigma_ns = 10.0;                         // pulse experiments
  std::vector<double> sigma_list_ns;              // sweep-sigma
  std::vector<int> n_jqf_list;                    // njqf
  std::optional<std::pair<double, double>> bracket_MHz;  // resonance, offsets
};

struct RunConfig {
  int schema_version = 1;
  QubitBlock dq;
  QubitBlock jqf;
  std::optional<DriveBlock> drive;
  SimBlock sim;
  ExperimentBlock experiment;
  std::string output_dir = "out";
  nlohmann::json raw;  // canonical echo for the manifest

  TransmonSpec dq_spec() const;
  TransmonSpec jqf_spec() const;
  Frame frame() const;
  double omega_d() const;         // rad/ns, from drive.frequency_GHz
  double drive_e_amp() const;     // envelope units, from drive.rabi_MHz
  DriveEnvelope envelope() const;
};

// Parse and validate a config file. Unknown keys, missing keys, type
// mismatches and out-of-range values raise SchemaError naming the key.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_json(const nlohmann::json& j);

}  // namespace jqf
