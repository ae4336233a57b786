#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "jqf/analytic.hpp"
#include "jqf/hilbert.hpp"

using namespace jqf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kOmega = kTwoPi * 5.0;        // 5 GHz
const double kAlpha = kTwoPi * (-0.3);     // -300 MHz
const double kRabi16 = kTwoPi * 0.016;     // 16 MHz

// {|1>,|2>} block of the rotating-frame Hamiltonian.
Eigen::Matrix2cd h2_block(double omega, double omega_d, double alpha,
                          double Omega) {
  Eigen::Matrix2cd h;
  const double delta = omega - omega_d;
  h << delta, std::sqrt(2.0) * Omega, std::sqrt(2.0) * Omega,
      2.0 * delta + alpha;
  return h;
}

Matrix h3_full(double omega, double omega_d, double alpha, double Omega) {
  Matrix h = Matrix::Zero(3, 3);
  const double delta = omega - omega_d;
  h(0, 1) = h(1, 0) = Omega;
  h(1, 1) = delta;
  h(1, 2) = h(2, 1) = std::sqrt(2.0) * Omega;
  h(2, 2) = 2.0 * delta + alpha;
  return h;
}

}  // namespace

TEST_CASE("dressed states at zero detuning") {
  const ThreeLevelDressed d = dressed_states(kOmega, kOmega, kAlpha, kRabi16);
  CHECK(d.a / kTwoPi * 1e3 == doctest::Approx(150.0).epsilon(1e-12));
  CHECK(d.b / kTwoPi * 1e3 == doctest::Approx(22.6274169980).epsilon(1e-10));
  CHECK(d.e_plus / kTwoPi * 1e3 == doctest::Approx(1.6970665504).epsilon(1e-8));
  CHECK(d.e_minus / kTwoPi * 1e3 ==
        doctest::Approx(-301.6970665504).epsilon(1e-8));
}

TEST_CASE("dressed states degenerate drive") {
  const ThreeLevelDressed d = dressed_states(kOmega, kOmega, kAlpha, 0.0);
  CHECK(d.e_plus == doctest::Approx(0.0));
  CHECK(d.e_minus == doctest::Approx(kAlpha));
  CHECK(d.theta_plus == doctest::Approx(0.0));
  CHECK(d.theta_minus == doctest::Approx(std::numbers::pi / 2.0));
}

TEST_CASE("dressed energies are eigenvalues of the two-level block") {
  for (double detuning_MHz : {-3.0, 0.0, 1.7, 5.0}) {
    const double omega_d = kOmega + kTwoPi * detuning_MHz * 1e-3;
    const ThreeLevelDressed d = dressed_states(kOmega, omega_d, kAlpha, kRabi16);
    const Eigen::Matrix2cd h2 = h2_block(kOmega, omega_d, kAlpha, kRabi16);

    Eigen::Vector2cd vp(std::cos(d.theta_plus), std::sin(d.theta_plus));
    Eigen::Vector2cd vm(std::cos(d.theta_minus), std::sin(d.theta_minus));
    CHECK((h2 * vp - d.e_plus * vp).norm() < 1e-12 * std::abs(kAlpha));
    CHECK((h2 * vm - d.e_minus * vm).norm() < 1e-12 * std::abs(kAlpha));
    CHECK(std::abs(vp.dot(vm)) < 1e-12);
  }
}

TEST_CASE("two eigenvector representations agree up to a global sign") {
  // (cos theta+, sin theta+) versus (-b/s, (a - R)/s).
  for (double rabi_MHz : {1.0, 8.0, 16.0, 40.0}) {
    for (double det_MHz : {-2.0, 0.0, 3.0}) {
      const double Omega = kTwoPi * rabi_MHz * 1e-3;
      const double omega_d = kOmega + kTwoPi * det_MHz * 1e-3;
      const ThreeLevelDressed d = dressed_states(kOmega, omega_d, kAlpha, Omega);
      const double r = std::hypot(d.a, d.b);
      const double c1 = -d.b / d.s;
      const double c2 = (d.a - r) / d.s;
      const double dot = c1 * std::cos(d.theta_plus) + c2 * std::sin(d.theta_plus);
      CHECK(std::abs(std::abs(dot) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("resonance shift") {
  const double shift = resonance_shift(kRabi16, kAlpha);
  CHECK(shift / kTwoPi * 1e3 == doctest::Approx(1.7066666667).epsilon(1e-10));
  CHECK((kOmega + shift) / kTwoPi == doctest::Approx(5.0017066667).epsilon(1e-10));
  CHECK(resonance_shift(0.0, kAlpha) == 0.0);
  CHECK(resonance_shift(kTwoPi * 0.0237, kAlpha) / kTwoPi * 1e3 ==
        doctest::Approx(3.7446).epsilon(1e-10));
  // |alpha| doubling halves the shift
  CHECK(resonance_shift(kRabi16, 2.0 * kAlpha) ==
        doctest::Approx(0.5 * shift).epsilon(1e-14));
  CHECK_THROWS_AS(resonance_shift(kRabi16, 0.0), std::invalid_argument);
}

TEST_CASE("exact resonance root") {
  const double root = exact_resonance(kOmega, kAlpha, kRabi16);
  // quadratic solution delta = (alpha + sqrt(alpha^2 + 16 Omega^2))/4
  const double delta_exact =
      (kAlpha + std::sqrt(kAlpha * kAlpha + 16.0 * kRabi16 * kRabi16)) / 4.0;
  // bisection runs to ~1 Hz, i.e. 1e-6 MHz
  CHECK((root - kOmega) / kTwoPi * 1e3 ==
        doctest::Approx(delta_exact / kTwoPi * 1e3).epsilon(2e-6));
  CHECK((root - kOmega) / kTwoPi * 1e3 == doctest::Approx(1.6876782802).epsilon(1e-5));
  const ThreeLevelDressed d = dressed_states(kOmega, root, kAlpha, kRabi16);
  CHECK(std::abs(d.e_plus) < kTwoPi * 2e-9);
}

TEST_CASE("maximum cw population, exact and approximate") {
  const double omega_d_res = kOmega + resonance_shift(kRabi16, kAlpha);
  const double exact = p1_max_exact(kRabi16, kAlpha, kOmega, omega_d_res);
  CHECK(exact == doctest::Approx(0.9944684568).epsilon(1e-9));
  CHECK(p1_max_approx(kRabi16, kAlpha) ==
        doctest::Approx(0.9943111111).epsilon(1e-10));
  CHECK(p1_max_approx(kTwoPi * 0.0237, kAlpha) ==
        doctest::Approx(0.987518).epsilon(1e-10));
  CHECK(p1_max_approx(0.0, kAlpha) == 1.0);
  CHECK(p1_max_exact(0.0, kAlpha, kOmega, kOmega) == 1.0);

  // monotone decreasing in Omega at fixed alpha
  double prev = 1.0;
  for (int i = 1; i <= 40; ++i) {
    const double Omega = kTwoPi * 1e-3 * i;  // 1..40 MHz
    const double p = p1_max_exact(
        Omega, kAlpha, kOmega, kOmega + resonance_shift(Omega, kAlpha));
    CHECK(p < prev);
    prev = p;
  }
  CHECK_THROWS_AS(p1_max_approx(kRabi16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(p1_max_exact(0.0, -kAlpha, kOmega, kOmega),
                  std::invalid_argument);  // Omega = 0 with a < 0
}

TEST_CASE("full three-level matrix centers the Rabi doublet at resonance") {
  const double omega_d = kOmega + resonance_shift(kRabi16, kAlpha);
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      h3_full(kOmega, omega_d, kAlpha, kRabi16));
  const auto ev = es.eigenvalues();  // ascending; ev[2], ev[1] straddle zero
  // |0> and |+> split symmetrically about E ~= 0 by the Rabi coupling; the
  // midpoint measures how far the dressed |1> level sits from zero.
  const double midpoint = 0.5 * (ev(1) + ev(2));
  CHECK(std::abs(midpoint) / kTwoPi * 1e3 < 0.1);  // under 0.1 MHz
  // And the {|1>,|2>} block alone has an eigenvalue within 0.1 MHz of zero.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es2(
      h2_block(kOmega, omega_d, kAlpha, kRabi16));
  const double nearest =
      std::min(std::abs(es2.eigenvalues()(0)), std::abs(es2.eigenvalues()(1)));
  CHECK(nearest / kTwoPi * 1e3 < 0.1);
}

TEST_CASE("schrieffer-wolff energies") {
  const double eps1 = 0.0;
  const double eps2 = kAlpha;
  const auto [ep, em] = sw_effective_energies(eps1, eps2, kRabi16);
  CHECK(ep / kTwoPi * 1e3 == doctest::Approx(1.7066666667).epsilon(1e-10));
  CHECK(ep + em == doctest::Approx(eps1 + eps2).epsilon(1e-14));

  const auto [e0p, e0m] = sw_effective_energies(0.3, -1.1, 0.0);
  CHECK(e0p == 0.3);
  CHECK(e0m == -1.1);
  CHECK_THROWS_AS(sw_effective_energies(1.0, 1.0, kRabi16),
                  std::invalid_argument);

  // agrees with the dressed |+> energy to fourth order in Omega
  const ThreeLevelDressed d = dressed_states(kOmega, kOmega, kAlpha, kRabi16);
  CHECK(std::abs(ep - d.e_plus) / kTwoPi * 1e3 < 0.05);
}

TEST_CASE("schrieffer-wolff population deficit") {
  const double deficit = sw_population_deficit(0.0, kAlpha, kRabi16);
  CHECK(deficit == doctest::Approx(5.6888888889e-3).epsilon(1e-10));
  CHECK(1.0 - deficit == doctest::Approx(0.9943111111).epsilon(1e-10));
  CHECK(sw_population_deficit(0.0, kAlpha, 0.0) == 0.0);
  CHECK_THROWS_AS(sw_population_deficit(1.0, 1.0, kRabi16),
                  std::invalid_argument);
}

TEST_CASE("exact deficit approaches the schrieffer-wolff deficit as Omega^4") {
  // At zero detuning both deficits expand as 2 Omega^2/alpha^2 + O(Omega^4);
  // their difference scales as the fourth power of the drive.
  auto diff_at = [](double ratio) {
    const double Omega = ratio * std::abs(kAlpha);
    const double exact = 1.0 - p1_max_exact(Omega, kAlpha, kOmega, kOmega);
    const double sw = sw_population_deficit(0.0, kAlpha, Omega);
    return std::abs(exact - sw);
  };
  const double d1 = diff_at(0.05);
  const double d2 = diff_at(0.025);
  CHECK(d1 / d2 == doctest::Approx(16.0).epsilon(0.15));
  CHECK(d2 < 1e-5);
  CHECK(d1 < 1e-4);

  // deficit ratio tends to one: within 5% for Omega/|alpha| <= 0.08
  for (double ratio : {0.01, 0.02, 0.04, 0.06, 0.08}) {
    const double Omega = ratio * std::abs(kAlpha);
    const double exact = 1.0 - p1_max_exact(Omega, kAlpha, kOmega, kOmega);
    const double approx = 1.0 - p1_max_approx(Omega, kAlpha);
    CHECK(exact / approx == doctest::Approx(1.0).epsilon(0.05));
  }
}
