#include "jqf/cli_run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "jqf/analytic.hpp"
#include "jqf/csv.hpp"
#include "jqf/errors.hpp"
#include "jqf/experiments.hpp"
#include "jqf/log.hpp"
#include "jqf/version.hpp"

namespace jqf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string kv(const std::string& key, double value) {
  return key + "=" + format_sig12(value);
}

ExperimentSetup setup_from(const RunConfig& config, const CliOptions& options) {
  ExperimentSetup setup;
  setup.dq = config.dq_spec();
  setup.jqf = config.jqf_spec();
  setup.include_jqf = config.sim.include_jqf;
  setup.dt = config.sim.dt_ns;
  setup.record_stride = config.sim.record_stride;
  setup.frame = config.frame();
  setup.jobs = options.jobs > 0
                   ? options.jobs
                   : std::max(1u, std::thread::hardware_concurrency());
  return setup;
}

SimConfig sim_from(const RunConfig& config) {
  SimConfig sim;
  sim.t_start = config.sim.t_start_ns;
  sim.t_end = config.sim.t_end_ns;
  sim.dt = config.sim.dt_ns;
  sim.record_stride = config.sim.record_stride;
  sim.frame = config.frame();
  return sim;
}

class RunDir {
 public:
  RunDir(const RunConfig& config, const std::string& subcommand)
      : dir_(config.output_dir), subcommand_(subcommand), config_(config) {
    std::filesystem::create_directories(dir_);
    start_ = std::chrono::steady_clock::now();
  }

  void write(const std::string& name, const std::string& content) const {
    write_text_file((dir_ / name).string(), content);
  }

  void finish(const std::string& status) const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    std::ostringstream oss;
    oss << "tool: jqf_sim " << kVersion << "\n"
        << "subcommand: " << subcommand_ << "\n"
        << "timestamp: " << utc_timestamp() << "\n"
        << "status: " << status << "\n"
        << "wall_seconds: " << format_sig12(wall) << "\n"
        << "config:\n"
        << config_.raw.dump(2) << "\n";
    write_text_file((dir_ / "manifest.txt").string(), oss.str());
  }

 private:
  std::filesystem::path dir_;
  std::string subcommand_;
  const RunConfig& config_;
  std::chrono::steady_clock::time_point start_;
};

int finish_scan(const RunDir& dir, const std::string& csv_name,
                const ScanResult& scan) {
  dir.write(csv_name, scan_csv(scan));
  for (const auto& row : scan.rows) {
    std::cout << kv("param", row.param) << " "
              << kv("omega_d_opt_GHz", row.omega_d_opt_GHz) << " "
              << kv("e_amp_MHz", row.e_amp_MHz) << " "
              << kv("p1_opt", row.p1_opt) << "\n";
  }
  if (!scan.errors.empty()) {
    for (const auto& err : scan.errors) {
      std::cerr << "error: sweep point param=" << format_sig12(err.param)
                << " failed: " << err.message << "\n";
    }
    dir.finish("partial: " + std::to_string(scan.errors.size()) +
               " sweep point(s) failed");
    return 2;
  }
  dir.finish("ok");
  return 0;
}

}  // namespace

std::string analytic_table(double omega_GHz, double alpha_GHz, double rabi_GHz,
                           double omega_d_GHz_or_zero, double sigma_ns_or_zero) {
  const double omega = kTwoPi * omega_GHz;
  const double alpha = kTwoPi * alpha_GHz;
  const double rabi = kTwoPi * rabi_GHz;

  std::ostringstream oss;
  oss << kv("omega_GHz", omega_GHz) << "\n"
      << kv("alpha_MHz", alpha_GHz * 1e3) << "\n"
      << kv("rabi_MHz", rabi_GHz * 1e3) << "\n";

  const double shift = resonance_shift(rabi, alpha);
  const double omega_res = exact_resonance(omega, alpha, rabi);
  oss << kv("shift_MHz", shift / kTwoPi * 1e3) << "\n"
      << kv("omega_d_res_GHz", (omega + shift) / kTwoPi) << "\n"
      << kv("omega_d_res_exact_GHz", omega_res / kTwoPi) << "\n";

  const double omega_d =
      omega_d_GHz_or_zero > 0.0 ? kTwoPi * omega_d_GHz_or_zero : omega_res;
  oss << kv("omega_d_GHz", omega_d / kTwoPi) << "\n";

  oss << kv("p1_max", p1_max_approx(rabi, alpha)) << "\n"
      << kv("p1_max_exact", p1_max_exact(rabi, alpha, omega, omega_d)) << "\n";

  const ThreeLevelDressed d = dressed_states(omega, omega_d, alpha, rabi);
  oss << kv("dressed_a_MHz", d.a / kTwoPi * 1e3) << "\n"
      << kv("dressed_b_MHz", d.b / kTwoPi * 1e3) << "\n"
      << kv("E_plus_MHz", d.e_plus / kTwoPi * 1e3) << "\n"
      << kv("E_minus_MHz", d.e_minus / kTwoPi * 1e3) << "\n"
      << kv("theta_plus_rad", d.theta_plus) << "\n"
      << kv("theta_minus_rad", d.theta_minus) << "\n";

  const double eps1 = omega - omega_d;
  const double eps2 = 2.0 * (omega - omega_d) + alpha;
  const auto [swp, swm] = sw_effective_energies(eps1, eps2, rabi);
  oss << kv("sw_E_plus_MHz", swp / kTwoPi * 1e3) << "\n"
      << kv("sw_E_minus_MHz", swm / kTwoPi * 1e3) << "\n"
      << kv("sw_deficit", sw_population_deficit(eps1, eps2, rabi)) << "\n";

  if (sigma_ns_or_zero > 0.0) {
    const double sigma = sigma_ns_or_zero;
    oss << kv("sigma_ns", sigma) << "\n"
        << kv("spectral_fwhm_MHz", spectral_fwhm(sigma) * 1e3) << "\n";
    // Reported as the angular Rabi amplitude sqrt(2 gamma1) E_amp over 2pi.
    const double pi_rabi = std::numbers::pi / (2.0 * sigma * gaussian_area_constant());
    oss << kv("pi_pulse_rabi_MHz", pi_rabi / kTwoPi * 1e3) << "\n";
  }
  return oss.str();
}

int run_experiment(const std::string& subcommand, const RunConfig& config,
                   const CliOptions& options) {
  if (config.experiment.name != subcommand) {
    throw SchemaError("config: experiment.name '" + config.experiment.name +
                      "' does not match subcommand '" + subcommand + "'");
  }
  const ExperimentSetup setup = setup_from(config, options);
  RunDir dir(config, subcommand);

  if (subcommand == "simulate") {
    const SystemModel model = make_model(setup);
    const Trajectory traj =
        evolve(model, config.envelope(), config.omega_d(), sim_from(config));
    dir.write("trajectory.csv", trajectory_csv(traj));
    const PeakInfo peak = max_p1(traj);
    std::cout << kv("p1_final", traj.p1.back()) << " "
              << kv("p1_max", peak.value) << " " << kv("t_at_max_ns", peak.t)
              << " " << kv("trace_err_max", traj.meta.trace_error_max) << "\n";
    dir.finish("ok");
    return 0;
  }

  if (subcommand == "resonance") {
    const double rabi = kTwoPi * config.drive->rabi_MHz * 1e-3;
    Bracket bracket = default_resonance_bracket(setup, rabi);
    if (config.experiment.bracket_MHz) {
      bracket.lo = setup.dq.omega + kTwoPi * config.experiment.bracket_MHz->first * 1e-3;
      bracket.hi = setup.dq.omega + kTwoPi * config.experiment.bracket_MHz->second * 1e-3;
    }
    const ResonanceResult res = find_resonance_cw(setup, rabi, bracket);
    ScanResult scan;
    scan.config_hash = fnv1a_hash(config.raw.dump());
    scan.timestamp = utc_timestamp();
    scan.rows.push_back({config.dq.anharmonicity_MHz, res.omega_d_res / kTwoPi,
                         config.drive->rabi_MHz, res.p1_max, false});
    dir.write("resonance.csv", scan_csv(scan));
    std::cout << kv("omega_d_res_GHz", res.omega_d_res / kTwoPi) << " "
              << kv("p1_max", res.p1_max) << " "
              << kv("t_at_max_ns", res.t_at_max) << "\n";
    dir.finish("ok");
    return 0;
  }

  if (subcommand == "scan-alpha") {
    std::vector<double> alphas;
    for (double a : config.experiment.alpha_list_MHz) {
      alphas.push_back(kTwoPi * a * 1e-3);
    }
    ScanResult scan;
    if (config.experiment.scan_mode == "cw") {
      const double rabi = kTwoPi * config.drive->rabi_MHz * 1e-3;
      scan = scan_alpha_cw(setup, alphas, rabi);
    } else {
      scan = scan_alpha_pulse(setup, alphas, config.experiment.sigma_ns);
    }
    return finish_scan(dir, "scan_alpha.csv", scan);
  }

  if (subcommand == "optimize-pulse") {
    const double sigma = config.experiment.sigma_ns;
    const PulseOptimum opt =
        optimize_pulse(setup, sigma, default_pulse_brackets(setup, sigma));
    ScanResult scan;
    scan.config_hash = fnv1a_hash(config.raw.dump());
    scan.timestamp = utc_timestamp();
    const double rabi_MHz =
        std::sqrt(2.0 * setup.dq.gamma) * opt.e_amp_opt / kTwoPi * 1e3;
    scan.rows.push_back({sigma, opt.omega_d_opt / kTwoPi, rabi_MHz, opt.p1_opt,
                         opt.used_grid_fallback});
    dir.write("optimize_pulse.csv", scan_csv(scan));
    dir.write("trajectory.csv", trajectory_csv(opt.final_trajectory));
    std::cout << kv("omega_d_opt_GHz", opt.omega_d_opt / kTwoPi) << " "
              << kv("rabi_opt_MHz", rabi_MHz) << " " << kv("p1_opt", opt.p1_opt)
              << " " << kv("post_pulse_slope", opt.post_pulse_slope) << "\n";
    dir.finish("ok");
    return 0;
  }

  if (subcommand == "sweep-sigma") {
    const SigmaSweepResult sweep =
        sweep_sigma(setup, config.experiment.sigma_list_ns);
    dir.write("sweep_sigma_two_level.csv", scan_csv(sweep.two_level));
    const int status_full = finish_scan(dir, "sweep_sigma_full.csv", sweep.full_model);
    if (!sweep.two_level.errors.empty()) {
      for (const auto& err : sweep.two_level.errors) {
        std::cerr << "error: two-level sweep point param="
                  << format_sig12(err.param) << " failed: " << err.message
                  << "\n";
      }
      return 2;
    }
    return status_full;
  }

  if (subcommand == "compare") {
    const CwPulseComparison cmp =
        compare_cw_pulse(setup, config.experiment.sigma_ns, config.drive_e_amp());
    dir.write("trajectory_cw.csv", trajectory_csv(cmp.cw));
    dir.write("trajectory_pulse.csv", trajectory_csv(cmp.pulse));
    std::cout << kv("omega_d_cw_GHz", cmp.omega_d_cw / kTwoPi) << " "
              << kv("p1_max_cw", cmp.p1_max_cw) << " "
              << kv("omega_d_pulse_GHz", cmp.omega_d_pulse / kTwoPi) << " "
              << kv("p1_max_pulse", cmp.p1_max_pulse) << "\n";
    dir.finish("ok");
    return 0;
  }

  if (subcommand == "njqf") {
    const ScanResult scan =
        njqf_study(setup, config.experiment.n_jqf_list, config.experiment.sigma_ns);
    return finish_scan(dir, "njqf.csv", scan);
  }

  if (subcommand == "analytic") {
    const double rabi_GHz = config.drive ? config.drive->rabi_MHz * 1e-3 : 0.0;
    const double omega_d_GHz = config.drive ? config.drive->frequency_GHz : 0.0;
    const std::string table = analytic_table(
        config.dq.frequency_GHz, config.dq.anharmonicity_MHz * 1e-3, rabi_GHz,
        omega_d_GHz, config.experiment.sigma_ns);
    std::cout << table;
    dir.write("analytic.txt", table);
    dir.finish("ok");
    return 0;
  }

  throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
}

}  // namespace jqf
