#pragma once

// Test-only reference implementations, kept independent of the library
// code paths they check.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "jqf/model.hpp"

namespace jqf::oracles {

// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a,
                           double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Heisenberg-picture generator for an operator O (dual route to the
// density-matrix equation of motion):
//   dO/dt = i[H, O] + sum_mn ( xi_mn [c_m^dag, O] c_n - xi*_mn c_n^dag [c_m, O] ).
inline Matrix heisenberg_rhs(const Matrix& op, double t,
                             const SystemModel& model,
                             const DriveEnvelope& drive, double omega_d,
                             Frame frame) {
  const Complex i_unit(0.0, 1.0);
  const Matrix h_free = (frame == Frame::RotatingRwa)
                            ? hamiltonian_rotating(model, omega_d)
                            : model.h_static;
  double field = envelope_value(drive, t);
  if (frame == Frame::Lab) field *= 2.0 * std::cos(omega_d * t);
  Matrix h = h_free;
  for (int m = 0; m < model.n_modes(); ++m) {
    h += model.drive_coeffs[m] * field *
         (model.lowering[m].adjoint() + model.lowering[m]);
  }
  Matrix out = i_unit * (h * op - op * h);
  for (int m = 0; m < model.n_modes(); ++m) {
    for (int n = 0; n < model.n_modes(); ++n) {
      const Matrix& cm = model.lowering[m];
      const Matrix& cn = model.lowering[n];
      const Matrix cmd = cm.adjoint();
      const Matrix cnd = cn.adjoint();
      out += model.xi(m, n) * (cmd * op - op * cmd) * cn;
      out -= std::conj(model.xi(m, n)) * cnd * (cm * op - op * cm);
    }
  }
  return out;
}

// Closed-form resonant Rabi oscillation of a two-level emitter with decay
// rate Gamma on the excited population (affine Bloch system solved by
// eigendecomposition): p' = -Gamma p - 2 W s, s' = -W + 2 W p - Gamma/2 s.
inline double damped_rabi_p1(double W, double Gamma, double t) {
  Eigen::Matrix2d a;
  a << -Gamma, -2.0 * W, 2.0 * W, -0.5 * Gamma;
  Eigen::Vector2d b(0.0, -W);
  const Eigen::Vector2d xstar = -a.inverse() * b;
  const Eigen::Vector2d x0 = -xstar;  // p(0)=0, s(0)=0
  Eigen::EigenSolver<Eigen::Matrix2d> es(a);
  const Eigen::Vector2cd lam = es.eigenvalues();
  const Eigen::Matrix2cd v = es.eigenvectors();
  const Eigen::Vector2cd c = v.inverse() * x0.cast<Complex>();
  Complex p(0.0, 0.0);
  for (int k = 0; k < 2; ++k) {
    p += v(0, k) * c(k) * std::exp(lam(k) * t);
  }
  return p.real() + xstar(0);
}

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed);
  return gen;
}

inline Matrix random_matrix(int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(u(rng()), u(rng()));
  }
  return m;
}

inline Matrix random_hermitian(int dim) {
  const Matrix m = random_matrix(dim);
  return 0.5 * (m + m.adjoint());
}

inline Matrix random_density(int dim) {
  const Matrix m = random_matrix(dim);
  Matrix rho = m * m.adjoint();
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

inline Matrix random_pure_density(int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = Complex(u(rng()), u(rng()));
  psi.normalize();
  return psi * psi.adjoint();
}

}  // namespace jqf::oracles
