#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "jqf/cli_run.hpp"
#include "jqf/config.hpp"
#include "jqf/errors.hpp"
#include "jqf/version.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string output_dir;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config_path,
                              "Path to the run config file");
  if (config_required) opt->required();
  cmd->add_option("--output", args.output_dir,
                  "Output directory (overrides the config)");
  cmd->add_option("--jobs", args.jobs,
                  "Sweep-point parallelism (default: logical cores)");
}

int dispatch(const std::string& name, const CommonArgs& args) {
  jqf::RunConfig config = jqf::parse_config(args.config_path);
  if (!args.output_dir.empty()) config.output_dir = args.output_dir;
  jqf::CliOptions options;
  options.jobs = args.jobs;
  return jqf::run_experiment(name, config, options);
}

const char* error_code(const std::exception& e) {
  if (dynamic_cast<const jqf::SchemaError*>(&e)) return "schema";
  if (dynamic_cast<const jqf::BoundaryError*>(&e)) return "bracket-boundary";
  if (dynamic_cast<const jqf::NonConvergenceError*>(&e)) return "non-convergence";
  if (dynamic_cast<const jqf::NumericFailureError*>(&e)) return "numeric-failure";
  if (dynamic_cast<const jqf::InvalidDimensionError*>(&e)) return "invalid-dimension";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid-argument";
  return "runtime";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and calibration toolkit for a driven data qubit "
               "protected by a filter qubit on a semi-infinite line"};
  app.set_version_flag("--version", std::string("jqf_sim ") + jqf::kVersion);
  app.require_subcommand(1);

  const std::vector<std::string> experiment_names{
      "simulate", "resonance", "scan-alpha", "optimize-pulse",
      "sweep-sigma", "compare", "njqf"};
  std::map<std::string, CommonArgs> args_map;
  for (const auto& name : experiment_names) {
    auto* cmd = app.add_subcommand(name, "Run the '" + name + "' experiment");
    add_common(cmd, args_map[name], true);
  }

  // `analytic` works from a config or from direct parameters.
  CommonArgs analytic_args;
  double omega_GHz = 0.0, alpha_GHz = 0.0, rabi_GHz = 0.0;
  double omega_d_GHz = 0.0, sigma_ns = 0.0;
  auto* analytic = app.add_subcommand(
      "analytic", "Print the closed-form calibration table");
  add_common(analytic, analytic_args, false);
  analytic->add_option("--omega", omega_GHz, "Qubit frequency (GHz)");
  analytic->add_option("--alpha", alpha_GHz, "Anharmonicity (GHz, negative)");
  analytic->add_option("--rabi", rabi_GHz, "Rabi rate sqrt(2 gamma1) E (GHz)");
  analytic->add_option("--omega-d", omega_d_GHz,
                       "Drive frequency (GHz; default: exact resonance)");
  analytic->add_option("--sigma", sigma_ns, "Gaussian pulse FWHM (ns)");

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& name : experiment_names) {
      if (app.get_subcommand(name)->parsed()) {
        return dispatch(name, args_map[name]);
      }
    }
    if (analytic->parsed()) {
      if (!analytic_args.config_path.empty()) {
        return dispatch("analytic", analytic_args);
      }
      if (omega_GHz <= 0.0 || alpha_GHz == 0.0) {
        std::cerr << "error: code=invalid-argument msg=\"analytic needs "
                     "--config or --omega and --alpha\"\n";
        return 1;
      }
      std::cout << jqf::analytic_table(omega_GHz, alpha_GHz, rabi_GHz,
                                       omega_d_GHz, sigma_ns);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: code=" << error_code(e) << " msg=\"" << e.what()
              << "\"\n";
    return 1;
  }
  return 0;
}
