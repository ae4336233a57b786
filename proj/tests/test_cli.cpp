#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "jqf/cli_run.hpp"
#include "jqf/config.hpp"
#include "jqf/csv.hpp"
#include "jqf/errors.hpp"

using namespace jqf;
using nlohmann::json;

namespace {

json base_config() {
  return json::parse(R"({
    "schema_version": 1,
    "qubits": {
      "dq":  {"frequency_GHz": 5.0, "anharmonicity_MHz": -300.0,
              "gamma_MHz": 0.002, "phase_pi": 0.0, "levels": 4},
      "jqf": {"frequency_GHz": 5.0, "anharmonicity_MHz": -300.0,
              "gamma_MHz": 100.0, "phase_pi": 1.0, "levels": 2}
    },
    "drive": {"shape": "cw", "rabi_MHz": 16.0, "frequency_GHz": 5.0017},
    "sim": {"t_end_ns": 5.0, "dt_ns": 0.01, "record_stride": 10,
            "frame": "rotating-rwa", "include_jqf": true},
    "experiment": {"name": "simulate"},
    "output": {"directory": "out"}
  })");
}

std::filesystem::path fresh_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("jqf_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

}  // namespace

TEST_CASE("config parsing converts units at the boundary") {
  const RunConfig cfg = parse_config_json(base_config());
  CHECK(cfg.jqf_spec().gamma == doctest::Approx(0.6283185307).epsilon(1e-10));
  CHECK(cfg.dq_spec().gamma == doctest::Approx(1.2566370614e-5).epsilon(1e-9));
  CHECK(cfg.dq_spec().alpha ==
        doctest::Approx(-0.3 * 2.0 * std::numbers::pi).epsilon(1e-12));
  CHECK(cfg.jqf_spec().phase == doctest::Approx(std::numbers::pi));
  CHECK(cfg.omega_d() ==
        doctest::Approx(5.0017 * 2.0 * std::numbers::pi).epsilon(1e-12));

  json half = base_config();
  half["qubits"]["jqf"]["phase_pi"] = 0.5;
  CHECK(parse_config_json(half).jqf_spec().phase ==
        doctest::Approx(std::numbers::pi / 2.0));
}

TEST_CASE("unknown keys are hard errors that name the key") {
  json bad = base_config();
  bad["drive"]["sgima"] = 10.0;
  try {
    parse_config_json(bad);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("sgima") != std::string::npos);
  }

  json top = base_config();
  top["extra_block"] = 1;
  CHECK_THROWS_AS(parse_config_json(top), SchemaError);
}

TEST_CASE("missing and malformed keys are rejected") {
  json missing = base_config();
  missing["qubits"]["dq"].erase("gamma_MHz");
  try {
    parse_config_json(missing);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("qubits.dq.gamma_MHz") !=
          std::string::npos);
  }

  json negative = base_config();
  negative["qubits"]["jqf"]["gamma_MHz"] = -5.0;
  CHECK_THROWS_AS(parse_config_json(negative), SchemaError);

  json badframe = base_config();
  badframe["sim"]["frame"] = "interaction";
  CHECK_THROWS_AS(parse_config_json(badframe), SchemaError);

  json badversion = base_config();
  badversion["schema_version"] = 2;
  CHECK_THROWS_AS(parse_config_json(badversion), SchemaError);

  json step = base_config();
  step["drive"]["shape"] = "step";  // requires t_on_ns
  CHECK_THROWS_AS(parse_config_json(step), SchemaError);

  CHECK_THROWS_AS(parse_config("/no/such/file.cfg"), SchemaError);
}

TEST_CASE("zero-drive simulate writes an all-zero p1 trajectory") {
  json j = base_config();
  j["drive"]["rabi_MHz"] = 0.0;
  const auto dir = fresh_dir("sim0");
  j["output"]["directory"] = dir.string();
  const RunConfig cfg = parse_config_json(j);

  CliOptions options;
  options.jobs = 1;
  CHECK(run_experiment("simulate", cfg, options) == 0);

  const std::string csv = slurp(dir / "trajectory.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t_ns,p1,p0,p2,p3,trace_err,neg");
  std::string row;
  int rows = 0;
  while (std::getline(lines, row)) {
    ++rows;
    std::istringstream cells(row);
    std::string t, p1;
    std::getline(cells, t, ',');
    std::getline(cells, p1, ',');
    CHECK(p1 == "0");
  }
  CHECK(rows == 51);  // 5 ns at 0.1 ns resolution, including t = 0

  CHECK(std::filesystem::exists(dir / "manifest.txt"));
  const std::string manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.find("status: ok") != std::string::npos);
  CHECK(manifest.find("schema_version") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("experiment name must match the subcommand") {
  const RunConfig cfg = parse_config_json(base_config());
  CliOptions options;
  CHECK_THROWS_AS(run_experiment("resonance", cfg, options), SchemaError);
}

TEST_CASE("reruns are byte-identical") {
  json j = base_config();
  j["sim"]["t_end_ns"] = 3.0;
  const auto dir1 = fresh_dir("gold1");
  const auto dir2 = fresh_dir("gold2");
  CliOptions options;
  options.jobs = 1;

  j["output"]["directory"] = dir1.string();
  CHECK(run_experiment("simulate", parse_config_json(j), options) == 0);
  j["output"]["directory"] = dir2.string();
  CHECK(run_experiment("simulate", parse_config_json(j), options) == 0);

  CHECK(slurp(dir1 / "trajectory.csv") == slurp(dir2 / "trajectory.csv"));
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("driven trajectory matches the checked-in golden") {
  const std::string golden_path =
      std::string(JQF_TEST_DATA_DIR) + "/golden_simulate_cw.csv";
  json j = base_config();
  j["sim"]["t_end_ns"] = 2.0;
  const auto dir = fresh_dir("golden");
  j["output"]["directory"] = dir.string();
  CliOptions options;
  options.jobs = 1;
  CHECK(run_experiment("simulate", parse_config_json(j), options) == 0);
  const std::string produced = slurp(dir / "trajectory.csv");
  CHECK(produced == slurp(golden_path));
  std::filesystem::remove_all(dir);
}

TEST_CASE("analytic table carries the calibration quantities") {
  const std::string table = analytic_table(5.0, -0.3, 0.016, 0.0, 10.0);
  CHECK(table.find("shift_MHz=1.70666666667") != std::string::npos);
  CHECK(table.find("p1_max=0.994311111111") != std::string::npos);
  CHECK(table.find("p1_max_exact=0.99446") != std::string::npos);
  CHECK(table.find("spectral_fwhm_MHz=88.2542400611") != std::string::npos);
  CHECK(table.find("pi_pulse_rabi_MHz=23.4859319675") != std::string::npos);
  CHECK(table.find("omega_d_res_GHz=5.00170666667") != std::string::npos);
}

TEST_CASE("shipped example configs parse cleanly") {
  const std::filesystem::path config_dir(JQF_CONFIG_DIR);
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(config_dir)) {
    if (entry.path().extension() != ".cfg") continue;
    ++seen;
    CHECK_NOTHROW(parse_config(entry.path().string()));
  }
  CHECK(seen == 7);
}
