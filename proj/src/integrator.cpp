#include "jqf/integrator.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jqf/errors.hpp"
#include "jqf/log.hpp"

namespace jqf {

namespace {

constexpr double kTraceTol = 1e-6;
constexpr int kResymStride = 1000;

// Diagonal indices of the joint space belonging to data-qubit level l.
std::vector<std::vector<int>> level_index_table(const std::vector<int>& dims) {
  const int n_dq = dims[0];
  int rest = 1;
  for (std::size_t k = 1; k < dims.size(); ++k) rest *= dims[k];
  std::vector<std::vector<int>> table(n_dq);
  for (int l = 0; l < n_dq; ++l) {
    table[l].reserve(rest);
    for (int j = 0; j < rest; ++j) table[l].push_back(l * rest + j);
  }
  return table;
}

}  // namespace

void validate_sim_config(const SimConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw std::invalid_argument("SimConfig: dt must be > 0");
  }
  if (!(config.t_end > config.t_start)) {
    throw std::invalid_argument("SimConfig: t_end must be > t_start");
  }
  if (config.record_stride < 1) {
    throw std::invalid_argument("SimConfig: record_stride must be >= 1");
  }
}

double Trajectory::p1_at(double t) const {
  if (times.empty()) throw InsufficientDataError("p1_at: empty trajectory");
  std::size_t best = 0;
  double best_dist = std::abs(times[0] - t);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double d = std::abs(times[i] - t);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return p1[best];
}

Matrix ground_state(int dim) {
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return rho;
}

Trajectory evolve(const SystemModel& model, const DriveEnvelope& drive,
                  double omega_d, const SimConfig& config) {
  return evolve_from(model, drive, omega_d, config, ground_state(model.dim()));
}

Trajectory evolve_from(const SystemModel& model, const DriveEnvelope& drive,
                       double omega_d, const SimConfig& config,
                       const Matrix& rho0) {
  validate_sim_config(config);
  validate_envelope(drive);
  const int d = model.dim();
  if (rho0.rows() != d || rho0.cols() != d) {
    throw InvalidDimensionError("evolve: initial state dimension mismatch");
  }
  if (!rho0.allFinite()) {
    throw NumericFailureError("evolve: initial state contains NaN/Inf");
  }
  if (hermiticity_error(rho0) > 1e-10) {
    throw std::invalid_argument("evolve: initial state is not Hermitian");
  }
  if (trace_error(rho0) > 1e-9) {
    throw std::invalid_argument("evolve: initial state trace is not one");
  }

  const double span = config.t_end - config.t_start;
  const long n_steps = std::max(1L, std::lround(span / config.dt));
  const double dt = span / static_cast<double>(n_steps);

  MasterOp op(model, drive, omega_d, config.frame);
  const auto levels = level_index_table(model.dims);
  const int n_dq = model.dims[0];

  Trajectory traj;
  traj.meta.config = config;
  traj.meta.omega_d = omega_d;
  traj.meta.dt_effective = dt;
  traj.meta.n_steps = n_steps;
  traj.level_populations.resize(n_dq);

  Matrix rho = rho0;
  Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);

  auto record = [&](long step) {
    const double t = config.t_start + dt * static_cast<double>(step);
    if (!rho.allFinite()) {
      throw NumericFailureError("evolve: NaN/Inf in the state at t = " +
                                std::to_string(t) + " ns");
    }
    traj.times.push_back(t);
    for (int l = 0; l < n_dq; ++l) {
      double p = 0.0;
      for (int idx : levels[l]) p += rho(idx, idx).real();
      traj.level_populations[l].push_back(p);
    }
    traj.p1.push_back(n_dq > 1 ? traj.level_populations[1].back() : 0.0);
    const double terr = trace_error(rho);
    traj.trace_error.push_back(terr);
    traj.meta.trace_error_max = std::max(traj.meta.trace_error_max, terr);
    const double herm = hermiticity_error(rho);
    traj.meta.herm_drift_max = std::max(traj.meta.herm_drift_max, herm);
    const double neg = std::max(0.0, -min_eigenvalue(rho));
    traj.max_negativity.push_back(neg);
    traj.meta.negativity_max = std::max(traj.meta.negativity_max, neg);
  };

  record(0);
  for (long step = 0; step < n_steps; ++step) {
    const double t = config.t_start + dt * static_cast<double>(step);
    op.apply(rho, t, k1);
    stage = rho + (0.5 * dt) * k1;
    op.apply(stage, t + 0.5 * dt, k2);
    stage = rho + (0.5 * dt) * k2;
    op.apply(stage, t + 0.5 * dt, k3);
    stage = rho + dt * k3;
    op.apply(stage, t + dt, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const Complex tr = rho.trace();
    if (!std::isfinite(tr.real()) || !std::isfinite(tr.imag())) {
      throw NumericFailureError("evolve: NaN/Inf at step " +
                                std::to_string(step + 1));
    }
    if (std::abs(tr - 1.0) > kTraceTol) {
      std::ostringstream oss;
      oss << "evolve: |Tr rho - 1| = " << std::abs(tr - 1.0) << " at t = "
          << (t + dt) << " ns exceeds " << kTraceTol
          << "; reduce dt (current dt = " << dt << " ns)";
      throw NonConvergenceError(oss.str());
    }

    if ((step + 1) % kResymStride == 0) {
      rho = 0.5 * (rho + rho.adjoint()).eval();
      ++traj.meta.resym_count;
      log_debug("evolve: re-symmetrized rho at step " + std::to_string(step + 1));
    }
    if ((step + 1) % config.record_stride == 0 || step + 1 == n_steps) {
      record(step + 1);
    }
  }
  return traj;
}

PeakInfo max_p1(const Trajectory& traj) {
  if (traj.times.empty()) {
    throw std::invalid_argument("max_p1: empty trajectory");
  }
  std::size_t imax = 0;
  for (std::size_t i = 1; i < traj.p1.size(); ++i) {
    if (traj.p1[i] > traj.p1[imax]) imax = i;  // strict: ties keep earliest
  }
  PeakInfo peak;
  if (imax == 0 || imax + 1 == traj.p1.size()) {
    peak.t = traj.times[imax];
    peak.value = traj.p1[imax];
    peak.at_boundary = true;
    return peak;
  }
  const double ym = traj.p1[imax - 1];
  const double y0 = traj.p1[imax];
  const double yp = traj.p1[imax + 1];
  const double denom = ym - 2.0 * y0 + yp;
  const double h = traj.times[imax + 1] - traj.times[imax];
  if (denom >= 0.0) {  // flat or degenerate: keep the sample
    peak.t = traj.times[imax];
    peak.value = y0;
    return peak;
  }
  peak.t = traj.times[imax] + 0.5 * h * (ym - yp) / denom;
  peak.value = y0 - (ym - yp) * (ym - yp) / (8.0 * denom);
  return peak;
}

double fit_exponential_decay(const Trajectory& traj, double t_fit_start) {
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] >= t_fit_start) {
      if (traj.p1[i] <= 0.0) {
        throw std::invalid_argument(
            "fit_exponential_decay: p1 must be > 0 over the fit window");
      }
      ts.push_back(traj.times[i]);
      ys.push_back(std::log(traj.p1[i]));
    }
  }
  if (ts.size() < 8) {
    throw InsufficientDataError(
        "fit_exponential_decay: need at least 8 samples in the window, got " +
        std::to_string(ts.size()));
  }
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const double n = static_cast<double>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
    stt += ts[i] * ts[i];
    sty += ts[i] * ys[i];
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  return -slope;
}

double p1_slope(const Trajectory& traj, double t_from, double t_to) {
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] >= t_from && traj.times[i] <= t_to) {
      st += traj.times[i];
      sy += traj.p1[i];
      stt += traj.times[i] * traj.times[i];
      sty += traj.times[i] * traj.p1[i];
      ++count;
    }
  }
  if (count < 2) {
    throw InsufficientDataError("p1_slope: need at least 2 samples in window");
  }
  const double n = static_cast<double>(count);
  return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace jqf
