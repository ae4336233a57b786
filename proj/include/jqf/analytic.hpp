#pragma once

#include <utility>

namespace jqf {

// Closed-form three-level analysis of a driven transmon in the frame
// rotating at the drive frequency. All rates and energies are angular
// (rad/ns). The {|1>,|2>} block of the rotating-frame Hamiltonian is
//
//   [ omega-omega_d      sqrt(2) Omega       ]
//   [ sqrt(2) Omega      2(omega-omega_d)+alpha ]
//
// = (3(omega-omega_d)+alpha)/2 * I + [a b; b -a].
struct ThreeLevelDressed {
  double a = 0.0;
  double b = 0.0;           // sqrt(2) * Omega
  double s = 0.0;           // sqrt(2 R (R - a)) with R = hypot(a, b)
  double e_plus = 0.0;      // dressed level adiabatically connected to |1>
  double e_minus = 0.0;
  double theta_plus = 0.0;  // |+> = cos(theta+)|1> + sin(theta+)|2>
  double theta_minus = 0.0;
};

ThreeLevelDressed dressed_states(double omega, double omega_d, double alpha,
                                 double Omega);

// Leading-order displacement of the drive frequency that keeps the dressed
// |1> level at zero energy: omega_d - omega = -2 Omega^2 / alpha.
double resonance_shift(double Omega, double alpha);

// Drive frequency at which e_plus vanishes exactly, found by bisection to
// ~1 Hz. Returns omega_d (rad/ns).
double exact_resonance(double omega, double alpha, double Omega);

// Maximum population of |1> in the Rabi oscillation between |0> and |+>,
// b^2/s^2 = |<1|+>|^2.
double p1_max_exact(double Omega, double alpha, double omega, double omega_d);

// Small-Omega approximation 1 - 2 Omega^2 / alpha^2.
double p1_max_approx(double Omega, double alpha);

// Second-order effective energies of the {|1>,|2>} block after a
// Schrieffer-Wolff elimination of the sqrt(2) Omega coupling. The two
// shifts are opposite, so e_plus + e_minus = eps1 + eps2 exactly.
std::pair<double, double> sw_effective_energies(double eps1, double eps2,
                                                double Omega);

// Leading-order population lost from |1> to |2> in the dressed state,
// 2 Omega^2 / (eps2 - eps1)^2.
double sw_population_deficit(double eps1, double eps2, double Omega);

}  // namespace jqf
