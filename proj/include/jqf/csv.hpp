#pragma once

#include <string>

#include "jqf/experiments.hpp"
#include "jqf/integrator.hpp"

namespace jqf {

// Trajectory CSV: header `t_ns,p1,p0,p2,p3,trace_err,neg`, one row per
// recorded sample, floats with 12 significant digits. Missing data-qubit
// levels are written as zero.
std::string trajectory_csv(const Trajectory& traj);

// Scan CSV: header `param,omega_d_opt_GHz,e_amp_MHz,p1_opt,boundary_flag`.
std::string scan_csv(const ScanResult& scan);

std::string format_sig12(double value);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace jqf
