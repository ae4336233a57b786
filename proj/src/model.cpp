#include "jqf/model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jqf/errors.hpp"
#include "jqf/log.hpp"

namespace jqf {

void validate_spec(const TransmonSpec& spec) {
  if (!std::isfinite(spec.omega) || !std::isfinite(spec.alpha) ||
      !std::isfinite(spec.gamma) || !std::isfinite(spec.phase)) {
    throw std::invalid_argument("TransmonSpec: parameters must be finite");
  }
  if (spec.gamma < 0.0) {
    throw std::invalid_argument("TransmonSpec: gamma must be >= 0");
  }
  if (spec.n_levels < 2) {
    throw InvalidDimensionError("TransmonSpec: n_levels must be >= 2");
  }
  if (spec.alpha > 0.0) {
    log_warn("TransmonSpec: positive anharmonicity alpha = " +
             std::to_string(spec.alpha) + " rad/ns");
  }
}

Matrix coupling_matrix_xi(const std::vector<TransmonSpec>& specs,
                          double omega_q) {
  (void)omega_q;  // positions enter only via the stored phases
  const int n = static_cast<int>(specs.size());
  Matrix xi(n, n);
  const Complex i_unit(0.0, 1.0);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      const double pm = specs[m].phase;
      const double pk = specs[k].phase;
      const double amp = 0.5 * std::sqrt(specs[m].gamma * specs[k].gamma);
      xi(m, k) = amp * (std::exp(i_unit * (pm + pk)) +
                        std::exp(i_unit * std::abs(pm - pk)));
    }
  }
  return xi;
}

double drive_coefficient(const TransmonSpec& spec) {
  return std::sqrt(2.0 * spec.gamma) * std::cos(spec.phase);
}

Matrix hamiltonian_static(const std::vector<TransmonSpec>& specs) {
  std::vector<int> dims;
  dims.reserve(specs.size());
  for (const auto& s : specs) dims.push_back(s.n_levels);
  int total = 1;
  for (int d : dims) total *= d;
  Matrix h = Matrix::Zero(total, total);
  for (std::size_t m = 0; m < specs.size(); ++m) {
    const int n = specs[m].n_levels;
    Matrix local = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      // omega n + alpha/2 n(n-1)
      local(j, j) = specs[m].omega * j + 0.5 * specs[m].alpha * j * (j - 1);
    }
    h += embed(local, static_cast<int>(m), dims);
  }
  return h;
}

SystemModel build_system_model(const std::vector<TransmonSpec>& specs) {
  if (specs.empty()) {
    throw std::invalid_argument("build_system_model: need at least one mode");
  }
  for (const auto& s : specs) validate_spec(s);

  SystemModel model;
  model.specs = specs;
  for (const auto& s : specs) model.dims.push_back(s.n_levels);

  model.omega_q = specs[0].omega;
  for (std::size_t m = 1; m < specs.size(); ++m) {
    if (specs[m].omega != specs[0].omega) {
      std::ostringstream oss;
      oss << "build_system_model: mode frequencies differ ("
          << specs[m].omega << " vs " << specs[0].omega
          << " rad/ns); using the first as the reference";
      log_warn(oss.str());
    }
  }

  model.xi = coupling_matrix_xi(specs, model.omega_q);
  // Physical dissipator requires Re(xi) >= 0; true by construction, so any
  // violation beyond roundoff indicates corrupted inputs.
  {
    const Matrix re_xi = 0.5 * (model.xi + model.xi.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(re_xi, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + re_xi.norm())) {
      throw std::invalid_argument(
          "build_system_model: Re(xi) has a negative eigenvalue");
    }
  }

  for (std::size_t m = 0; m < specs.size(); ++m) {
    model.lowering.push_back(
        embed(annihilation(specs[m].n_levels), static_cast<int>(m), model.dims));
    model.drive_coeffs.push_back(drive_coefficient(specs[m]));
  }
  model.h_static = hamiltonian_static(specs);
  return model;
}

Matrix hamiltonian_rotating(const SystemModel& model, double omega_d) {
  std::vector<TransmonSpec> shifted = model.specs;
  for (auto& s : shifted) s.omega -= omega_d;
  return hamiltonian_static(shifted);
}

MasterOp::MasterOp(const SystemModel& model, const DriveEnvelope& drive,
                   double omega_d, Frame frame)
    : drive_(drive), omega_d_(omega_d), frame_(frame) {
  const int n = model.n_modes();
  const int d = model.dim();
  h_base_ = (frame == Frame::RotatingRwa) ? hamiltonian_rotating(model, omega_d)
                                          : model.h_static;
  drive_op_ = Matrix::Zero(d, d);
  for (int m = 0; m < n; ++m) {
    drive_op_ += model.drive_coeffs[m] *
                 (model.lowering[m].adjoint() + model.lowering[m]);
  }
  damping_ = Matrix::Zero(d, d);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      damping_ += model.xi(m, k) * (model.lowering[m].adjoint() * model.lowering[k]);
    }
  }
  damping_adj_ = damping_.adjoint();
  const Matrix a_mat = model.xi + model.xi.adjoint();
  for (int m = 0; m < n; ++m) {
    Matrix jm = Matrix::Zero(d, d);
    for (int k = 0; k < n; ++k) jm += a_mat(m, k) * model.lowering[k];
    jump_.push_back(std::move(jm));
    raising_.push_back(model.lowering[m].adjoint());
  }
  h_t_.resize(d, d);
  tmp_.resize(d, d);
}

double MasterOp::drive_value(double t) const {
  const double ed = envelope_value(drive_, t);
  if (frame_ == Frame::RotatingRwa) return ed;
  return 2.0 * ed * std::cos(omega_d_ * t);
}

void MasterOp::apply(const Matrix& rho, double t, Matrix& out) const {
  const Complex i_unit(0.0, 1.0);
  h_t_ = h_base_ + drive_value(t) * drive_op_;
  out.noalias() = -i_unit * (h_t_ * rho);
  out.noalias() += i_unit * (rho * h_t_);
  out.noalias() -= damping_ * rho;
  out.noalias() -= rho * damping_adj_;
  for (std::size_t m = 0; m < jump_.size(); ++m) {
    tmp_.noalias() = jump_[m] * rho;
    out.noalias() += tmp_ * raising_[m];
  }
}

Matrix master_rhs(const Matrix& rho, double t, const SystemModel& model,
                  const DriveEnvelope& drive, double omega_d, Frame frame) {
  if (rho.rows() != rho.cols() || rho.rows() != model.dim()) {
    throw InvalidDimensionError("master_rhs: rho dimension " +
                                std::to_string(rho.rows()) +
                                " does not match model dimension " +
                                std::to_string(model.dim()));
  }
  MasterOp op(model, drive, omega_d, frame);
  Matrix out(model.dim(), model.dim());
  op.apply(rho, t, out);
  return out;
}

}  // namespace jqf
