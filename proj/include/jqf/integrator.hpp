#pragma once

#include <string>
#include <vector>

#include "jqf/model.hpp"

namespace jqf {

struct SimConfig {
  double t_start = 0.0;  // ns
  double t_end = 0.0;    // ns
  double dt = 0.01;      // ns
  int record_stride = 10;
  Frame frame = Frame::RotatingRwa;
};

void validate_sim_config(const SimConfig& config);

struct TrajectoryMeta {
  SimConfig config;
  double omega_d = 0.0;       // rad/ns
  double dt_effective = 0.0;  // dt after fitting an integer number of steps
  long n_steps = 0;
  int resym_count = 0;        // Hermitian re-symmetrizations applied
  double herm_drift_max = 0.0;
  double trace_error_max = 0.0;
  double negativity_max = 0.0;
};

// Recorded observables of one integration. p1 is the population of the
// first excited state of the data qubit; level_populations[l] holds the
// data-qubit level-l population at each sample.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> p1;
  std::vector<std::vector<double>> level_populations;
  std::vector<double> trace_error;
  std::vector<double> max_negativity;
  TrajectoryMeta meta;

  std::size_t size() const { return times.size(); }
  // p1 at the recorded time closest to t.
  double p1_at(double t) const;
};

Matrix ground_state(int dim);

// Fixed-step classic Runge-Kutta propagation of the master equation from
// the joint ground state. Aborts with NonConvergenceError if |Tr rho - 1|
// exceeds 1e-6 and with NumericFailureError on NaN/Inf.
Trajectory evolve(const SystemModel& model, const DriveEnvelope& drive,
                  double omega_d, const SimConfig& config);

// Same, from a caller-supplied initial state (must be Hermitian, trace one).
Trajectory evolve_from(const SystemModel& model, const DriveEnvelope& drive,
                       double omega_d, const SimConfig& config,
                       const Matrix& rho0);

struct PeakInfo {
  double t = 0.0;
  double value = 0.0;
  bool at_boundary = false;
};

// Discrete maximum of p1 refined by a parabola through the three bracketing
// samples; ties break toward the earliest time. A maximum at the first or
// last sample is returned as-is with at_boundary set.
PeakInfo max_p1(const Trajectory& traj);

// Radiative decay rate from a least-squares fit of ln p1 over
// [t_fit_start, end]. Requires at least 8 samples with p1 > 0.
double fit_exponential_decay(const Trajectory& traj, double t_fit_start);

// Least-squares slope of p1 (not its log) over [t_from, t_to], in 1/ns.
double p1_slope(const Trajectory& traj, double t_from, double t_to);

}  // namespace jqf
