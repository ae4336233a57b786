#include "jqf/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "jqf/analytic.hpp"
#include "jqf/drives.hpp"
#include "jqf/errors.hpp"
#include "jqf/log.hpp"

namespace jqf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOmegaTol = kTwoPi * 1e-5;  // 0.01 MHz in rad/ns
constexpr double kStiffnessBudget = 0.25;    // max angular rate * dt

double rabi_of(const ExperimentSetup& setup, double e_amp) {
  return std::sqrt(2.0 * setup.dq.gamma) * e_amp;
}

double e_amp_of(const ExperimentSetup& setup, double rabi) {
  return rabi / std::sqrt(2.0 * setup.dq.gamma);
}

std::string format_scan_table(const std::vector<double>& xs,
                              const std::vector<double>& fs) {
  std::ostringstream oss;
  oss.precision(9);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    oss << "\n  omega_d/2pi = " << xs[i] / kTwoPi << " GHz  p1 = " << fs[i];
  }
  return oss.str();
}

}  // namespace

SystemModel make_model(const ExperimentSetup& setup) {
  std::vector<TransmonSpec> specs{setup.dq};
  if (setup.include_jqf) specs.push_back(setup.jqf);
  return build_system_model(specs);
}

double stiffness_rate(const ExperimentSetup& setup, double e_amp,
                      double omega_d_max_detuning) {
  double rate = omega_d_max_detuning;
  std::vector<TransmonSpec> specs{setup.dq};
  if (setup.include_jqf) specs.push_back(setup.jqf);
  for (const auto& s : specs) {
    const double drive = 2.0 * std::abs(drive_coefficient(s)) * e_amp;
    rate = std::max(rate, drive + 2.0 * s.gamma + std::abs(s.alpha));
  }
  return rate;
}

double capped_dt(const ExperimentSetup& setup, double e_amp) {
  const double rate = stiffness_rate(setup, e_amp, kTwoPi * 0.01);
  if (rate <= 0.0) return setup.dt;
  return std::min(setup.dt, kStiffnessBudget / rate);
}

GoldenResult golden_max(const std::function<double(double)>& f, double lo,
                        double hi, double xtol) {
  if (!(hi > lo)) throw std::invalid_argument("golden_max: empty bracket");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double lo0 = lo, hi0 = hi;
  GoldenResult best;
  best.fx = -std::numeric_limits<double>::infinity();
  auto eval = [&](double x) {
    const double v = f(x);
    ++best.evals;
    if (v > best.fx) {  // strict: ties keep the earlier (lower-x) point
      best.fx = v;
      best.x = x;
    }
    return v;
  };
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (hi - lo > xtol) {
    if (f1 >= f2) {  // keep the lower interval on ties
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = eval(x2);
    }
  }
  best.at_edge = (best.x - lo0 < xtol) || (hi0 - best.x < xtol);
  return best;
}

void parallel_for_ordered(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (int i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }
}

Bracket default_resonance_bracket(const ExperimentSetup& setup, double rabi) {
  double shift = 0.0;
  if (setup.dq.n_levels > 2 && setup.dq.alpha != 0.0) {
    shift = resonance_shift(rabi, setup.dq.alpha);
  }
  const double pad = std::max(kTwoPi * 5e-4, 0.4 * std::abs(shift));
  Bracket b;
  b.lo = setup.dq.omega + std::min(0.0, shift) - pad;
  b.hi = setup.dq.omega + std::max(0.0, shift) + std::abs(shift) + pad;
  return b;
}

ResonanceResult find_resonance_cw(const ExperimentSetup& setup, double rabi,
                                  const Bracket& bracket) {
  const SystemModel model = make_model(setup);
  const double e_amp = e_amp_of(setup, rabi);
  const double horizon = 3.0 * std::numbers::pi / rabi;  // three Rabi periods

  SimConfig sim;
  sim.t_end = horizon;
  sim.dt = capped_dt(setup, e_amp);
  sim.record_stride = setup.record_stride;
  sim.frame = setup.frame;

  const DriveEnvelope cw = CwEnvelope{e_amp};
  auto objective = [&](double omega_d) {
    return max_p1(evolve(model, cw, omega_d, sim)).value;
  };

  // Coarse pre-scan: the bracket must contain an interior maximum.
  const int n_scan = 21;
  std::vector<double> xs(n_scan), fs(n_scan);
  for (int i = 0; i < n_scan; ++i) {
    xs[i] = bracket.lo + (bracket.hi - bracket.lo) * i / (n_scan - 1);
  }
  parallel_for_ordered(n_scan, setup.jobs, [&](int i) { fs[i] = objective(xs[i]); });
  std::size_t imax = 0;
  for (std::size_t i = 1; i < fs.size(); ++i) {
    if (fs[i] > fs[imax]) imax = i;
  }
  if (imax == 0 || imax + 1 == fs.size()) {
    throw BoundaryError(
        "find_resonance_cw: maximum at bracket edge; diagnostic scan:" +
        format_scan_table(xs, fs));
  }

  const GoldenResult g =
      golden_max(objective, xs[imax - 1], xs[imax + 1], kOmegaTol);

  ResonanceResult res;
  res.omega_d_res = g.x;
  res.evals = g.evals + n_scan;
  const Trajectory traj = evolve(model, cw, g.x, sim);
  const PeakInfo peak = max_p1(traj);
  res.p1_max = peak.value;
  res.t_at_max = peak.t;
  return res;
}

PulseBrackets default_pulse_brackets(const ExperimentSetup& setup,
                                     double sigma) {
  const double amp_seed = pi_pulse_amplitude(sigma, setup.dq.gamma);
  double shift = 0.0;
  if (setup.dq.n_levels > 2 && setup.dq.alpha != 0.0) {
    shift = resonance_shift(rabi_of(setup, amp_seed), setup.dq.alpha);
  }
  PulseBrackets b;
  b.omega_d.lo = setup.dq.omega + shift - kTwoPi * 2.5e-3;  // +- 2.5 MHz
  b.omega_d.hi = setup.dq.omega + shift + kTwoPi * 2.5e-3;
  b.e_amp.lo = 0.75 * amp_seed;
  b.e_amp.hi = 1.25 * amp_seed;
  return b;
}

namespace {

struct PulseObjective {
  const SystemModel* model;
  double sigma;
  double t0;
  double t_meas;
  SimConfig sim;

  double operator()(double omega_d, double e_amp) const {
    const DriveEnvelope env = GaussianEnvelope{e_amp, t0, sigma};
    const Trajectory traj = evolve(*model, env, omega_d, sim);
    return traj.p1.back();  // sim.t_end == t_meas
  }
};

}  // namespace

PulseOptimum optimize_pulse(const ExperimentSetup& setup, double sigma,
                            const PulseBrackets& brackets,
                            const PulseOptions& options) {
  const SystemModel model = make_model(setup);
  const double t0 = 2.0 * sigma;
  const double t_meas = t0 + 3.0 * sigma;

  PulseObjective obj;
  obj.model = &model;
  obj.sigma = sigma;
  obj.t0 = t0;
  obj.t_meas = t_meas;
  obj.sim.t_end = t_meas;
  // One step size for the whole descent, sized for the largest amplitude
  // under consideration so the objective stays smooth across evaluations.
  obj.sim.dt = capped_dt(setup, brackets.e_amp.hi);
  obj.sim.record_stride = setup.record_stride;
  obj.sim.frame = setup.frame;

  const double amp_seed =
      std::clamp(pi_pulse_amplitude(sigma, setup.dq.gamma), brackets.e_amp.lo,
                 brackets.e_amp.hi);
  double omega_seed = setup.dq.omega;
  if (setup.dq.n_levels > 2 && setup.dq.alpha != 0.0) {
    omega_seed += resonance_shift(rabi_of(setup, amp_seed), setup.dq.alpha);
  }
  omega_seed = std::clamp(omega_seed, brackets.omega_d.lo, brackets.omega_d.hi);

  PulseOptimum out;
  out.omega_d_opt = omega_seed;
  out.e_amp_opt = amp_seed;
  out.p1_opt = obj(omega_seed, amp_seed);

  const double amp_tol = 1e-4 * std::max(amp_seed, 1e-300);
  PulseBrackets box = brackets;
  bool fallback_done = false;
  bool settled = false;

  for (int round = 1; round <= options.max_rounds; ++round) {
    out.rounds = round;
    const double p_before = out.p1_opt;

    GoldenResult gw = golden_max(
        [&](double w) { return obj(w, out.e_amp_opt); }, box.omega_d.lo,
        box.omega_d.hi, kOmegaTol);
    if (gw.fx >= out.p1_opt) {
      out.p1_opt = gw.fx;
      out.omega_d_opt = gw.x;
    }

    GoldenResult ga = golden_max(
        [&](double a) { return obj(out.omega_d_opt, a); }, box.e_amp.lo,
        box.e_amp.hi, amp_tol);
    if (ga.fx >= out.p1_opt) {
      out.p1_opt = ga.fx;
      out.e_amp_opt = ga.x;
    }

    if ((gw.at_edge || ga.at_edge) && !fallback_done) {
      // Descent stalled against a bracket edge: re-seed from a coarse grid
      // over widened brackets, then continue the descent around the best
      // grid point.
      fallback_done = true;
      out.used_grid_fallback = true;
      const double wo = 0.75 * (brackets.omega_d.hi - brackets.omega_d.lo);
      const double wa = 0.75 * (brackets.e_amp.hi - brackets.e_amp.lo);
      std::vector<double> ws(5), as(5);
      for (int i = 0; i < 5; ++i) {
        ws[i] = out.omega_d_opt - wo + 2.0 * wo * i / 4.0;
        as[i] = std::max(0.0, out.e_amp_opt - wa + 2.0 * wa * i / 4.0);
      }
      double best = -1.0;
      int bi = 0, bj = 0;
      std::vector<double> grid(25);
      parallel_for_ordered(25, setup.jobs, [&](int k) {
        grid[k] = obj(ws[k / 5], as[k % 5]);
      });
      for (int k = 0; k < 25; ++k) {
        if (grid[k] > best) {
          best = grid[k];
          bi = k / 5;
          bj = k % 5;
        }
      }
      if (bi == 0 || bi == 4 || bj == 0 || bj == 4) {
        throw BoundaryError(
            "optimize_pulse: grid fallback best point on the widened bracket "
            "edge; optimum lies outside the search region");
      }
      box.omega_d = {ws[bi - 1], ws[bi + 1]};
      box.e_amp = {as[bj - 1], as[bj + 1]};
      if (best > out.p1_opt) {
        out.p1_opt = best;
        out.omega_d_opt = ws[bi];
        out.e_amp_opt = as[bj];
      }
      continue;
    }

    if (out.p1_opt - p_before < options.improvement_tol && round >= 2) {
      settled = true;
      break;
    }
  }
  out.converged = settled;
  if (!settled) {
    log_warn("optimize_pulse: descent did not settle within " +
             std::to_string(options.max_rounds) + " rounds; best-so-far kept");
  }

  // Final run with the post-pulse window for the stationarity check.
  SimConfig verify = obj.sim;
  verify.t_end = t_meas + options.verify_window;
  const DriveEnvelope env = GaussianEnvelope{out.e_amp_opt, t0, sigma};
  out.final_trajectory = evolve(model, env, out.omega_d_opt, verify);
  out.post_pulse_slope =
      p1_slope(out.final_trajectory, t_meas, t_meas + options.verify_window);
  if (options.check_stationary && setup.include_jqf &&
      std::abs(out.post_pulse_slope) > 1e-6) {
    std::ostringstream oss;
    oss << "optimize_pulse: p1 is not stationary after the pulse (slope = "
        << out.post_pulse_slope << " /ns)";
    throw NonConvergenceError(oss.str());
  }
  return out;
}

namespace {

std::string setup_digest(const ExperimentSetup& setup, const std::string& tag) {
  std::ostringstream oss;
  oss.precision(17);
  oss << tag << "|dq:" << setup.dq.omega << "," << setup.dq.alpha << ","
      << setup.dq.gamma << "," << setup.dq.phase << "," << setup.dq.n_levels
      << "|jqf:" << setup.jqf.omega << "," << setup.jqf.alpha << ","
      << setup.jqf.gamma << "," << setup.jqf.phase << "," << setup.jqf.n_levels
      << "|include_jqf:" << setup.include_jqf << "|dt:" << setup.dt
      << "|frame:" << (setup.frame == Frame::Lab ? "lab" : "rotating-rwa");
  return oss.str();
}

ScanResult new_scan(const ExperimentSetup& setup, const std::string& tag) {
  ScanResult scan;
  scan.config_hash = fnv1a_hash(setup_digest(setup, tag));
  scan.timestamp = utc_timestamp();
  return scan;
}

}  // namespace

ScanResult scan_alpha_cw(const ExperimentSetup& setup,
                         const std::vector<double>& alpha_list, double rabi) {
  ScanResult scan = new_scan(setup, "scan_alpha_cw");
  const int n = static_cast<int>(alpha_list.size());
  std::vector<std::optional<ScanRow>> rows(n);
  std::vector<std::optional<ScanError>> errs(n);
  parallel_for_ordered(n, setup.jobs, [&](int i) {
    ExperimentSetup local = setup;
    local.dq.alpha = alpha_list[i];
    local.jobs = 1;
    try {
      const ResonanceResult r = find_resonance_cw(
          local, rabi, default_resonance_bracket(local, rabi));
      ScanRow row;
      row.param = alpha_list[i] / kTwoPi * 1e3;  // MHz
      row.omega_d_opt_GHz = r.omega_d_res / kTwoPi;
      row.e_amp_MHz = rabi / kTwoPi * 1e3;
      row.p1_opt = r.p1_max;
      rows[i] = row;
    } catch (const std::exception& e) {
      errs[i] = ScanError{alpha_list[i] / kTwoPi * 1e3, e.what()};
    }
  });
  for (int i = 0; i < n; ++i) {
    if (rows[i]) scan.rows.push_back(*rows[i]);
    if (errs[i]) scan.errors.push_back(*errs[i]);
  }
  return scan;
}

ScanResult scan_alpha_pulse(const ExperimentSetup& setup,
                            const std::vector<double>& alpha_list,
                            double sigma) {
  ScanResult scan = new_scan(setup, "scan_alpha_pulse");
  const int n = static_cast<int>(alpha_list.size());
  std::vector<std::optional<ScanRow>> rows(n);
  std::vector<std::optional<ScanError>> errs(n);
  parallel_for_ordered(n, setup.jobs, [&](int i) {
    ExperimentSetup local = setup;
    local.dq.alpha = alpha_list[i];
    local.jobs = 1;
    try {
      const PulseOptimum opt =
          optimize_pulse(local, sigma, default_pulse_brackets(local, sigma));
      ScanRow row;
      row.param = alpha_list[i] / kTwoPi * 1e3;
      row.omega_d_opt_GHz = opt.omega_d_opt / kTwoPi;
      row.e_amp_MHz = rabi_of(local, opt.e_amp_opt) / kTwoPi * 1e3;
      row.p1_opt = opt.p1_opt;
      row.boundary_flag = opt.used_grid_fallback;
      rows[i] = row;
    } catch (const std::exception& e) {
      errs[i] = ScanError{alpha_list[i] / kTwoPi * 1e3, e.what()};
    }
  });
  for (int i = 0; i < n; ++i) {
    if (rows[i]) scan.rows.push_back(*rows[i]);
    if (errs[i]) scan.errors.push_back(*errs[i]);
  }
  return scan;
}

namespace {

ScanResult sweep_sigma_one_model(const ExperimentSetup& setup,
                                 const std::vector<double>& sigma_list,
                                 const std::string& tag) {
  ScanResult scan = new_scan(setup, tag);
  const int n = static_cast<int>(sigma_list.size());
  std::vector<std::optional<ScanRow>> rows(n);
  std::vector<std::optional<ScanError>> errs(n);
  parallel_for_ordered(n, setup.jobs, [&](int i) {
    ExperimentSetup local = setup;
    local.jobs = 1;
    try {
      const PulseOptimum opt = optimize_pulse(
          local, sigma_list[i], default_pulse_brackets(local, sigma_list[i]));
      ScanRow row;
      row.param = sigma_list[i];
      row.omega_d_opt_GHz = opt.omega_d_opt / kTwoPi;
      row.e_amp_MHz = rabi_of(local, opt.e_amp_opt) / kTwoPi * 1e3;
      row.p1_opt = opt.p1_opt;
      row.boundary_flag = opt.used_grid_fallback;
      rows[i] = row;
    } catch (const std::exception& e) {
      errs[i] = ScanError{sigma_list[i], e.what()};
    }
  });
  for (int i = 0; i < n; ++i) {
    if (rows[i]) scan.rows.push_back(*rows[i]);
    if (errs[i]) scan.errors.push_back(*errs[i]);
  }
  return scan;
}

}  // namespace

SigmaSweepResult sweep_sigma(const ExperimentSetup& setup,
                             const std::vector<double>& sigma_list) {
  SigmaSweepResult result;
  result.full_model = sweep_sigma_one_model(setup, sigma_list, "sweep_sigma");
  ExperimentSetup two_level = setup;
  two_level.dq.n_levels = 2;
  two_level.jqf.n_levels = 2;
  result.two_level =
      sweep_sigma_one_model(two_level, sigma_list, "sweep_sigma_two_level");
  return result;
}

CwPulseComparison compare_cw_pulse(const ExperimentSetup& setup, double sigma,
                                   double e_amp) {
  const SystemModel model = make_model(setup);
  const double t0 = 2.0 * sigma;
  const double t_meas = t0 + 3.0 * sigma;
  const double rabi = rabi_of(setup, e_amp);
  const double dt = capped_dt(setup, e_amp);

  double shift = 0.0;
  if (setup.dq.n_levels > 2 && setup.dq.alpha != 0.0) {
    shift = resonance_shift(rabi, setup.dq.alpha);
  }
  const Bracket wb{setup.dq.omega + shift - kTwoPi * 2.5e-3,
                   setup.dq.omega + shift + kTwoPi * 2.5e-3};

  CwPulseComparison cmp;

  {  // pulse branch: p1 at t_meas
    SimConfig sim;
    sim.t_end = t_meas;
    sim.dt = dt;
    sim.record_stride = setup.record_stride;
    sim.frame = setup.frame;
    const DriveEnvelope env = GaussianEnvelope{e_amp, t0, sigma};
    auto objective = [&](double w) {
      return evolve(model, env, w, sim).p1.back();
    };
    const GoldenResult g = golden_max(objective, wb.lo, wb.hi, kOmegaTol);
    if (g.at_edge) {
      throw BoundaryError("compare_cw_pulse: pulse optimum at bracket edge");
    }
    cmp.omega_d_pulse = g.x;
    SimConfig full = sim;
    full.t_end = t_meas + 30.0;
    cmp.pulse = evolve(model, env, g.x, full);
    cmp.p1_max_pulse = max_p1(cmp.pulse).value;
  }

  {  // cw branch: max over three Rabi periods past the ramp
    SimConfig sim;
    sim.t_end = t0 + 3.0 * std::numbers::pi / rabi;
    sim.dt = dt;
    sim.record_stride = setup.record_stride;
    sim.frame = setup.frame;
    const DriveEnvelope env = GaussianRampEnvelope{e_amp, t0, sigma};
    auto objective = [&](double w) {
      return max_p1(evolve(model, env, w, sim)).value;
    };
    const GoldenResult g = golden_max(objective, wb.lo, wb.hi, kOmegaTol);
    if (g.at_edge) {
      throw BoundaryError("compare_cw_pulse: cw optimum at bracket edge");
    }
    cmp.omega_d_cw = g.x;
    cmp.cw = evolve(model, env, g.x, sim);
    cmp.p1_max_cw = max_p1(cmp.cw).value;
  }
  return cmp;
}

ScanResult njqf_study(const ExperimentSetup& setup,
                      const std::vector<int>& n_jqf_list, double sigma) {
  for (int n : n_jqf_list) {
    if (n < 2) throw std::invalid_argument("njqf_study: n_jqf must be >= 2");
  }
  ExperimentSetup base = setup;
  base.jqf.n_levels = 2;
  const PulseOptimum opt =
      optimize_pulse(base, sigma, default_pulse_brackets(base, sigma));

  ScanResult scan = new_scan(setup, "njqf_study");
  const double t0 = 2.0 * sigma;
  const double t_meas = t0 + 3.0 * sigma;
  const int n = static_cast<int>(n_jqf_list.size());
  std::vector<std::optional<ScanRow>> rows(n);
  std::vector<std::optional<ScanError>> errs(n);
  parallel_for_ordered(n, setup.jobs, [&](int i) {
    ExperimentSetup local = setup;
    local.jqf.n_levels = n_jqf_list[i];
    try {
      const SystemModel model = make_model(local);
      SimConfig sim;
      sim.t_end = t_meas;
      sim.dt = capped_dt(local, opt.e_amp_opt);
      sim.record_stride = setup.record_stride;
      sim.frame = setup.frame;
      const DriveEnvelope env = GaussianEnvelope{opt.e_amp_opt, t0, sigma};
      const Trajectory traj = evolve(model, env, opt.omega_d_opt, sim);
      ScanRow row;
      row.param = n_jqf_list[i];
      row.omega_d_opt_GHz = opt.omega_d_opt / kTwoPi;
      row.e_amp_MHz = rabi_of(local, opt.e_amp_opt) / kTwoPi * 1e3;
      row.p1_opt = traj.p1.back();
      rows[i] = row;
    } catch (const std::exception& e) {
      errs[i] = ScanError{static_cast<double>(n_jqf_list[i]), e.what()};
    }
  });
  for (int i = 0; i < n; ++i) {
    if (rows[i]) scan.rows.push_back(*rows[i]);
    if (errs[i]) scan.errors.push_back(*errs[i]);
  }
  return scan;
}

std::string fnv1a_hash(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace jqf
