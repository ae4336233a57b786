#include "jqf/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jqf {

std::string format_sig12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream oss;
  oss << "t_ns,p1,p0,p2,p3,trace_err,neg\n";
  const auto& pops = traj.level_populations;
  auto level = [&](int l, std::size_t i) -> double {
    return (l < static_cast<int>(pops.size())) ? pops[l][i] : 0.0;
  };
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    oss << format_sig12(traj.times[i]) << ',' << format_sig12(level(1, i))
        << ',' << format_sig12(level(0, i)) << ',' << format_sig12(level(2, i))
        << ',' << format_sig12(level(3, i)) << ','
        << format_sig12(traj.trace_error[i]) << ','
        << format_sig12(traj.max_negativity[i]) << '\n';
  }
  return oss.str();
}

std::string scan_csv(const ScanResult& scan) {
  std::ostringstream oss;
  oss << "param,omega_d_opt_GHz,e_amp_MHz,p1_opt,boundary_flag\n";
  for (const auto& row : scan.rows) {
    oss << format_sig12(row.param) << ',' << format_sig12(row.omega_d_opt_GHz)
        << ',' << format_sig12(row.e_amp_MHz) << ','
        << format_sig12(row.p1_opt) << ',' << (row.boundary_flag ? 1 : 0)
        << '\n';
  }
  return oss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace jqf
