#pragma once

#include <string>

#include "jqf/config.hpp"

namespace jqf {

struct CliOptions {
  int jobs = 0;  // 0: use hardware concurrency
};

// Analytic calibration table (key=value lines). Frequencies in GHz on
// input; the table reports MHz quantities.
std::string analytic_table(double omega_GHz, double alpha_GHz, double rabi_GHz,
                           double omega_d_GHz_or_zero, double sigma_ns_or_zero);

// Dispatch one experiment: runs the computation, writes the CSV artifacts
// and the run manifest under the config's output directory, prints a
// summary to stdout. Returns the process exit status (0 on success).
// Partial sweep results are flushed before reporting a failure.
int run_experiment(const std::string& subcommand, const RunConfig& config,
                   const CliOptions& options);

}  // namespace jqf
