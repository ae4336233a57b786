#include "jqf/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jqf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dressed_e_plus(double omega, double omega_d, double alpha,
                      double Omega) {
  const double delta = omega - omega_d;
  const double a = (-alpha - delta) / 2.0;
  const double b = std::sqrt(2.0) * Omega;
  return (3.0 * delta + alpha) / 2.0 + std::hypot(a, b);
}

}  // namespace

ThreeLevelDressed dressed_states(double omega, double omega_d, double alpha,
                                 double Omega) {
  if (Omega < 0.0) throw std::invalid_argument("dressed_states: Omega must be >= 0");
  ThreeLevelDressed d;
  const double delta = omega - omega_d;
  d.a = (-alpha - delta) / 2.0;
  d.b = std::sqrt(2.0) * Omega;
  const double r = std::hypot(d.a, d.b);
  const double common = (3.0 * delta + alpha) / 2.0;
  d.e_plus = common + r;
  d.e_minus = common - r;
  d.s = std::sqrt(2.0 * r * (r - d.a));
  if (d.b == 0.0) {
    // Degenerate mixing: bare states, with |+> = |1> when a > 0.
    d.theta_plus = (d.a >= 0.0) ? 0.0 : std::numbers::pi / 2.0;
    d.theta_minus = (d.a >= 0.0) ? std::numbers::pi / 2.0 : 0.0;
    return d;
  }
  // |+> normalizes with s, |-> with sqrt(2 r (r + a)); signs are fixed so
  // that theta_plus -> 0 (|+> -> |1>) as Omega -> 0 at a > 0.
  d.theta_plus = std::atan2(r - d.a, d.b);
  d.theta_minus = std::atan2(r + d.a, -d.b);
  return d;
}

double resonance_shift(double Omega, double alpha) {
  if (alpha == 0.0) {
    throw std::invalid_argument(
        "resonance_shift: alpha must be nonzero (harmonic limit has no "
        "dispersive shift)");
  }
  return -2.0 * Omega * Omega / alpha;
}

double exact_resonance(double omega, double alpha, double Omega) {
  if (alpha == 0.0) throw std::invalid_argument("exact_resonance: alpha must be nonzero");
  const double shift = resonance_shift(Omega, alpha);
  // e_plus is monotonically decreasing in omega_d near the root; bracket
  // around the leading-order shift and bisect to ~1 Hz.
  double lo = omega;
  double hi = omega + 2.0 * shift + kTwoPi * 1e-3;
  if (hi < lo) std::swap(lo, hi);
  double flo = dressed_e_plus(omega, lo, alpha, Omega);
  double fhi = dressed_e_plus(omega, hi, alpha, Omega);
  for (int i = 0; i < 60 && flo * fhi > 0.0; ++i) {
    const double w = hi - lo;
    lo -= w;
    hi += w;
    flo = dressed_e_plus(omega, lo, alpha, Omega);
    fhi = dressed_e_plus(omega, hi, alpha, Omega);
  }
  if (flo * fhi > 0.0) {
    throw std::runtime_error("exact_resonance: failed to bracket the root");
  }
  const double tol = kTwoPi * 1e-9;  // 1 Hz in rad/ns
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = dressed_e_plus(omega, mid, alpha, Omega);
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double p1_max_exact(double Omega, double alpha, double omega, double omega_d) {
  const ThreeLevelDressed d = dressed_states(omega, omega_d, alpha, Omega);
  if (d.b == 0.0) {
    if (d.a > 0.0) return 1.0;  // undriven limit, |+> = |1>
    throw std::invalid_argument(
        "p1_max_exact: degenerate undriven case (a <= 0)");
  }
  return d.b * d.b / (d.s * d.s);
}

double p1_max_approx(double Omega, double alpha) {
  if (alpha == 0.0) throw std::invalid_argument("p1_max_approx: alpha must be nonzero");
  return 1.0 - 2.0 * Omega * Omega / (alpha * alpha);
}

std::pair<double, double> sw_effective_energies(double eps1, double eps2,
                                                double Omega) {
  if (eps1 == eps2) {
    throw std::invalid_argument("sw_effective_energies: degenerate levels");
  }
  const double shift = 2.0 * Omega * Omega / (eps2 - eps1);
  return {eps1 - shift, eps2 + shift};
}

double sw_population_deficit(double eps1, double eps2, double Omega) {
  if (eps1 == eps2) {
    throw std::invalid_argument("sw_population_deficit: degenerate levels");
  }
  const double gap = eps2 - eps1;
  return 2.0 * Omega * Omega / (gap * gap);
}

}  // namespace jqf
