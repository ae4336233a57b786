#pragma once

#include <vector>

#include "jqf/drives.hpp"
#include "jqf/hilbert.hpp"

namespace jqf {

// One anharmonic mode attached to the transmission line. All rates are
// angular (rad/ns); the position enters only through the phase
// phi = omega_q * l (the microwave velocity is 1).
struct TransmonSpec {
  double omega = 0.0;   // mode frequency (rad/ns)
  double alpha = 0.0;   // anharmonicity (rad/ns, <= 0 for transmons)
  double gamma = 0.0;   // coupling rate to the line (rad/ns, >= 0)
  double phase = 0.0;   // omega_q * l (rad)
  int n_levels = 2;
};

void validate_spec(const TransmonSpec& spec);

// Collective decay matrix,
//   xi_mn = sqrt(gamma_m gamma_n)/2 (e^{i(phi_m+phi_n)} + e^{i|phi_m-phi_n|}).
// Its real part is the rank-one Gram matrix of v_m = sqrt(gamma_m) cos(phi_m),
// so it is always positive semidefinite.
Matrix coupling_matrix_xi(const std::vector<TransmonSpec>& specs,
                          double omega_q);

// Coefficient kappa_m = sqrt(2 gamma_m) cos(phi_m); the drive term on mode m
// is kappa_m * E_in(t) (c_m^dag + c_m).
double drive_coefficient(const TransmonSpec& spec);

// Assembled system: embedded operators, static Hamiltonian, decay matrix
// and drive coefficients on the joint truncated space (data qubit first).
// Immutable after construction.
struct SystemModel {
  std::vector<TransmonSpec> specs;
  std::vector<int> dims;
  double omega_q = 0.0;                  // common reference frequency
  Matrix xi;                             // n x n collective decay matrix
  std::vector<Matrix> lowering;          // embedded c_m
  Matrix h_static;                       // sum_m omega_m n_m + alpha_m/2 n_m(n_m-1)
  std::vector<double> drive_coeffs;      // kappa_m

  int dim() const { return h_static.rows() > 0 ? static_cast<int>(h_static.rows()) : 0; }
  int n_modes() const { return static_cast<int>(specs.size()); }
};

SystemModel build_system_model(const std::vector<TransmonSpec>& specs);

// Static Hamiltonian on the joint space of the given modes.
Matrix hamiltonian_static(const std::vector<TransmonSpec>& specs);

// Same with every omega_m replaced by omega_m - omega_d (frame rotating at
// the drive frequency; the drive term is handled separately).
Matrix hamiltonian_rotating(const SystemModel& model, double omega_d);

enum class Frame { RotatingRwa, Lab };

// Right-hand side of the density-matrix equation of motion,
//
//   drho/dt = -i[H(t), rho]
//           + sum_mn [ xi_mn (c_n rho c_m^dag - c_m^dag c_n rho)
//                    + xi*_mn (c_m rho c_n^dag - rho c_n^dag c_m) ],
//
// with H(t) = hamiltonian_rotating + sum_m kappa_m E_d(t) (c_m^dag + c_m) in
// the rotating frame (RWA drive) and H(t) = h_static + sum_m kappa_m E_in(t)
// (c_m^dag + c_m), E_in = 2 E_d cos(omega_d t), in the lab frame.
Matrix master_rhs(const Matrix& rho, double t, const SystemModel& model,
                  const DriveEnvelope& drive, double omega_d, Frame frame);

// Precomputed form of master_rhs for time stepping. apply() reuses internal
// scratch, so one instance must not be shared across threads; concurrent
// integrations each build their own.
class MasterOp {
 public:
  MasterOp(const SystemModel& model, const DriveEnvelope& drive, double omega_d,
           Frame frame);

  // out = drho/dt at time t.
  void apply(const Matrix& rho, double t, Matrix& out) const;

  double drive_value(double t) const;  // E_d(t) or E_in(t) depending on frame
  int dim() const { return static_cast<int>(h_base_.rows()); }

 private:
  Matrix h_base_;              // rotating or static part
  Matrix drive_op_;            // sum_m kappa_m (c_m^dag + c_m)
  Matrix damping_;             // G = sum_mn xi_mn c_m^dag c_n
  Matrix damping_adj_;         // G^dag
  std::vector<Matrix> jump_;   // J_m = sum_n (xi + xi^dag)_mn c_n
  std::vector<Matrix> raising_;  // c_m^dag
  DriveEnvelope drive_;
  double omega_d_ = 0.0;
  Frame frame_ = Frame::RotatingRwa;
  mutable Matrix h_t_, tmp_;   // scratch
};

}  // namespace jqf
