#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jqf/integrator.hpp"
#include "jqf/model.hpp"

namespace jqf {

// Physics and stepping parameters shared by the reproduction experiments.
// Angular units throughout; the data qubit sits first.
struct ExperimentSetup {
  TransmonSpec dq;
  TransmonSpec jqf;
  bool include_jqf = true;
  double dt = 0.01;        // base integration step (ns)
  int record_stride = 10;
  Frame frame = Frame::RotatingRwa;
  int jobs = 1;            // sweep-point parallelism
};

SystemModel make_model(const ExperimentSetup& setup);

// Largest angular rate in the driven problem; the integration step for an
// experiment run is capped so that rate * dt stays small.
double stiffness_rate(const ExperimentSetup& setup, double e_amp,
                      double omega_d_max_detuning);
double capped_dt(const ExperimentSetup& setup, double e_amp);

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
  bool at_edge = false;
};

// Golden-section maximization of a unimodal function on [lo, hi] to the
// given x tolerance. Ties break toward lower x. Deterministic.
GoldenResult golden_max(const std::function<double(double)>& f, double lo,
                        double hi, double xtol);

struct ResonanceResult {
  double omega_d_res = 0.0;  // rad/ns
  double p1_max = 0.0;
  double t_at_max = 0.0;     // ns
  int evals = 0;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Default omega_d search bracket around the leading-order shifted resonance.
Bracket default_resonance_bracket(const ExperimentSetup& setup, double rabi);

// Drive-frequency optimum of max_t p1 under a cw drive with angular Rabi
// rate `rabi` = sqrt(2 gamma1) E_d. A coarse 21-point pre-scan verifies the
// bracket holds an interior maximum, then golden section refines to
// 0.01 MHz. Horizon: three Rabi periods.
ResonanceResult find_resonance_cw(const ExperimentSetup& setup, double rabi,
                                  const Bracket& bracket);

struct PulseOptimum {
  double omega_d_opt = 0.0;   // rad/ns
  double e_amp_opt = 0.0;     // envelope units
  double p1_opt = 0.0;        // p1 at t_meas = t0 + 3 sigma
  double post_pulse_slope = 0.0;  // dp1/dt averaged over the verify window
  int rounds = 0;
  bool converged = true;
  bool used_grid_fallback = false;
  Trajectory final_trajectory;    // run to t_meas + verify_window
};

struct PulseBrackets {
  Bracket omega_d;   // rad/ns
  Bracket e_amp;     // envelope units
};

PulseBrackets default_pulse_brackets(const ExperimentSetup& setup,
                                     double sigma);

struct PulseOptions {
  double verify_window = 20.0;       // ns of post-pulse stationarity check
  double improvement_tol = 1e-6;
  int max_rounds = 8;
  bool check_stationary = true;      // assert |slope| < 1e-6 /ns
};

// Coordinate descent (golden section per axis) on (omega_d, E_amp) for a
// gaussian pi pulse of width sigma centered at t0 = 2 sigma, maximizing p1
// read at t_meas = t0 + 3 sigma. Falls back to a 5x5 grid re-seed when a
// descent axis runs into its bracket edge.
PulseOptimum optimize_pulse(const ExperimentSetup& setup, double sigma,
                            const PulseBrackets& brackets,
                            const PulseOptions& options = {});

struct ScanRow {
  double param = 0.0;          // alpha/2pi in MHz, sigma in ns, or N_JQF
  double omega_d_opt_GHz = 0.0;
  double e_amp_MHz = 0.0;      // sqrt(2 gamma1) E / 2pi in MHz
  double p1_opt = 0.0;
  bool boundary_flag = false;
};

struct ScanError {
  double param = 0.0;
  std::string message;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::vector<ScanError> errors;  // failed sweep points (rows hold the rest)
  std::string config_hash;
  std::string timestamp;
};

// Resonance frequency and cw ceiling per anharmonicity (alpha in rad/ns).
ScanResult scan_alpha_cw(const ExperimentSetup& setup,
                         const std::vector<double>& alpha_list, double rabi);

// Same scan with a sigma-wide optimized gaussian pulse per alpha.
ScanResult scan_alpha_pulse(const ExperimentSetup& setup,
                            const std::vector<double>& alpha_list,
                            double sigma);

struct SigmaSweepResult {
  ScanResult full_model;
  ScanResult two_level;  // both qubits truncated to two levels
};

SigmaSweepResult sweep_sigma(const ExperimentSetup& setup,
                             const std::vector<double>& sigma_list);

struct CwPulseComparison {
  Trajectory cw;          // gaussian-ramp drive
  Trajectory pulse;       // gaussian drive
  double omega_d_cw = 0.0;
  double omega_d_pulse = 0.0;
  double p1_max_cw = 0.0;
  double p1_max_pulse = 0.0;
};

// cw-versus-pulse comparison at one shared amplitude: the cw drive ramps up
// with a gaussian edge and stays on; the pulse is the plain gaussian. The
// drive frequency of each branch is optimized separately.
CwPulseComparison compare_cw_pulse(const ExperimentSetup& setup, double sigma,
                                   double e_amp);

// Filter-truncation study: optimize at two filter levels, then rerun the
// same pulse with n_jqf levels and report p1 at t_meas.
ScanResult njqf_study(const ExperimentSetup& setup,
                      const std::vector<int>& n_jqf_list, double sigma);

// Deterministic work pool: applies fn to 0..n-1 with `jobs` threads and
// returns results in input order.
void parallel_for_ordered(int n, int jobs, const std::function<void(int)>& fn);

std::string fnv1a_hash(const std::string& text);
std::string utc_timestamp();

}  // namespace jqf
