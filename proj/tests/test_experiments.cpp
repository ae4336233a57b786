#include "doctest.h"

#include <atomic>
#include <cmath>
#include <numbers>

#include "jqf/analytic.hpp"
#include "jqf/errors.hpp"
#include "jqf/experiments.hpp"
#include "test_params.hpp"

using namespace jqf;
using jqf::testpar::kTwoPi;

TEST_CASE("golden section maximization") {
  auto f = [](double x) { return -(x - 0.37) * (x - 0.37); };
  const GoldenResult g = golden_max(f, 0.0, 1.0, 1e-9);
  CHECK(g.x == doctest::Approx(0.37).epsilon(1e-7));
  CHECK(!g.at_edge);

  // deterministic: identical reruns give identical iterates
  const GoldenResult h = golden_max(f, 0.0, 1.0, 1e-9);
  CHECK(g.x == h.x);
  CHECK(g.evals == h.evals);

  // an increasing function pushes the best point to the edge
  const GoldenResult e = golden_max([](double x) { return x; }, 0.0, 1.0, 1e-6);
  CHECK(e.at_edge);
}

TEST_CASE("parallel map keeps input order and propagates failures") {
  std::vector<int> out(64, -1);
  parallel_for_ordered(64, 4, [&](int i) { out[i] = 2 * i; });
  for (int i = 0; i < 64; ++i) CHECK(out[i] == 2 * i);

  CHECK_THROWS_AS(parallel_for_ordered(8, 3,
                                       [&](int i) {
                                         if (i == 5) {
                                           throw std::runtime_error("boom");
                                         }
                                       }),
                  std::runtime_error);
}

TEST_CASE("stiffness-capped step") {
  const ExperimentSetup setup = testpar::benchmark_setup();
  // Undriven: the base step survives.
  CHECK(capped_dt(setup, 0.0) == doctest::Approx(setup.dt));
  // The strongly coupled filter sees 2 kappa e_amp; a large amplitude must
  // shrink the step below the base value.
  const double e_amp = testpar::kRabi16 / std::sqrt(2.0 * setup.dq.gamma);
  CHECK(capped_dt(setup, e_amp) < setup.dt);
  CHECK(capped_dt(setup, e_amp) > 1e-4);
}

TEST_CASE("default brackets contain the analytic seeds") {
  const ExperimentSetup setup = testpar::benchmark_setup();
  const Bracket rb = default_resonance_bracket(setup, testpar::kRabi16);
  const double shifted =
      setup.dq.omega + resonance_shift(testpar::kRabi16, setup.dq.alpha);
  CHECK(rb.lo < shifted);
  CHECK(rb.hi > shifted);

  const PulseBrackets pb = default_pulse_brackets(setup, 10.0);
  const double amp_seed = pi_pulse_amplitude(10.0, setup.dq.gamma);
  CHECK(pb.e_amp.lo < amp_seed);
  CHECK(pb.e_amp.hi > amp_seed);
}

TEST_CASE("two-level qubit resonates at the bare frequency") {
  // No second excited state, no dispersive shift.
  ExperimentSetup setup = testpar::benchmark_setup(2, 2);
  const Bracket bracket{setup.dq.omega - kTwoPi * 1.5e-3,
                        setup.dq.omega + kTwoPi * 1.5e-3};
  const ResonanceResult res = find_resonance_cw(setup, testpar::kRabi16, bracket);
  CHECK(std::abs(res.omega_d_res - setup.dq.omega) / kTwoPi * 1e3 < 0.05);
  CHECK(res.p1_max > 0.99);
  CHECK(res.p1_max < 1.0 + 1e-9);
}

TEST_CASE("bracket without an interior maximum raises a boundary error") {
  ExperimentSetup setup = testpar::benchmark_setup(2, 2, false);
  // Far above resonance the response falls monotonically.
  const Bracket bad{setup.dq.omega + kTwoPi * 10e-3,
                    setup.dq.omega + kTwoPi * 14e-3};
  CHECK_THROWS_AS(find_resonance_cw(setup, testpar::kRabi16, bad),
                  BoundaryError);
}

TEST_CASE("pulse optimization on the two-level model") {
  ExperimentSetup setup = testpar::benchmark_setup(2, 2);
  const PulseOptimum opt =
      optimize_pulse(setup, 10.0, default_pulse_brackets(setup, 10.0));
  CHECK(opt.p1_opt > 0.995);
  CHECK(opt.p1_opt < 1.0 + 1e-9);
  CHECK(opt.converged);
  CHECK(std::abs(opt.post_pulse_slope) < 1e-6);
  // At two levels the pi-pulse estimate is already near-optimal.
  const double rabi_MHz =
      std::sqrt(2.0 * setup.dq.gamma) * opt.e_amp_opt / kTwoPi * 1e3;
  CHECK(rabi_MHz == doctest::Approx(23.49).epsilon(0.06));
  CHECK(std::abs(opt.omega_d_opt - setup.dq.omega) / kTwoPi * 1e3 < 1.0);
}

TEST_CASE("provenance helpers") {
  CHECK(fnv1a_hash("abc") == fnv1a_hash("abc"));
  CHECK(fnv1a_hash("abc") != fnv1a_hash("abd"));
  CHECK(fnv1a_hash("").size() == 16);
  const std::string ts = utc_timestamp();
  CHECK(ts.size() == 20);
  CHECK(ts.back() == 'Z');
}
