#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bqsim/config.hpp"
#include "bqsim/io.hpp"
#include "bqsim/scenarios.hpp"

using namespace bqsim;
namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(BQSIM_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("scenario catalog has the full stable id list") {
  const auto scenarios = list_scenarios();
  const std::vector<std::string> expected{
      "mode-exactness",   "expansion-orders", "error-kernels",
      "multiplier-norms", "linear-optimal",   "leading-term",
      "second-profile",   "table1",           "nonlinear-decay",
      "nonlinear-profile", "self-convergence"};
  REQUIRE(scenarios.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(scenarios[i].id == expected[i]);
    CHECK_FALSE(scenarios[i].anchor.empty());
  }
}

TEST_CASE("cli list matches the catalog and emits valid json") {
  const auto r = run_cli("list");
  CHECK(r.exit_code == 0);
  for (const auto& s : list_scenarios())
    CHECK(r.output.find(s.id) != std::string::npos);

  const auto rj = run_cli("list --json");
  CHECK(rj.exit_code == 0);
  const auto parsed = nlohmann::json::parse(rj.output);
  CHECK(parsed.size() == 11);
  for (const auto& item : parsed) CHECK_FALSE(item["anchor"].get<std::string>().empty());
}

TEST_CASE("cli verify runs a cheap scenario end to end") {
  const auto dir = fresh_dir("bqsim_cli_verify");
  const auto r = run_cli("verify expansion-orders --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[PASS]") != std::string::npos);

  // run directory contains manifest.json, report.json and the csv artifact
  bool found_manifest = false, found_csv = false;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.path().filename() == "manifest.json") found_manifest = true;
    if (entry.path().filename() == "expansion_remainders.csv") found_csv = true;
  }
  CHECK(found_manifest);
  CHECK(found_csv);
  fs::remove_all(dir);
}

TEST_CASE("cli verify signals expectation failure with exit code 2") {
  // mu^2 = 1/8 kills the leading r^7 coefficient of the remainder, so the
  // scaled ratio varies far more than 10x across the sweep: an honest FAIL.
  const auto dir = fresh_dir("bqsim_cli_verify_fail");
  const auto r = run_cli("verify expansion-orders --mu 0.35355339059327373 --out " +
                         dir.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("[FAIL]") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli simulate is deterministic byte for byte") {
  const auto dir1 = fresh_dir("bqsim_cli_sim1");
  const auto dir2 = fresh_dir("bqsim_cli_sim2");
  const auto cfg_path = fs::temp_directory_path() / "bqsim_cli_sim.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "dim = 1\nN = 128\nL = 20\nmu = 0.5\np = 3\n"
        << "u1_preset = gaussian\nu1_amplitude = 0.05\nu1_width = 2\n"
        << "t_end = 2\noutput_times = 0.5, 1, 2\nseed = 9\n";
  }
  const auto r1 =
      run_cli("simulate --config " + cfg_path.string() + " --out " + dir1.string());
  CHECK(r1.exit_code == 0);
  const auto r2 =
      run_cli("simulate --config " + cfg_path.string() + " --out " + dir2.string());
  CHECK(r2.exit_code == 0);

  const auto csv1 = read_file(dir1 / "simulate" / "series.csv");
  const auto csv2 = read_file(dir2 / "simulate" / "series.csv");
  REQUIRE_FALSE(csv1.empty());
  CHECK(csv1 == csv2);

  const auto manifest = nlohmann::json::parse(read_file(dir1 / "simulate" / "manifest.json"));
  CHECK(manifest["model"]["N"] == 128);
  CHECK(manifest["constants"].contains("P_u1"));

  fs::remove_all(dir1);
  fs::remove_all(dir2);
  fs::remove(cfg_path);
}

TEST_CASE("cli fit recovers a synthetic slope from csv") {
  const auto csv_path = fs::temp_directory_path() / "bqsim_cli_fit.csv";
  {
    NormSeries s;
    s.label = "L2";
    for (double t : log_spaced(10.0, 1e4, 12)) s.push(t, std::pow(t, -0.375));
    std::vector<NormSeries> all{s};
    write_series_csv(csv_path.string(), all);
  }
  const auto r = run_cli("fit " + csv_path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("slope -0.375") != std::string::npos);
  fs::remove(csv_path);
}

TEST_CASE("cli rejects unknown scenarios with exit code 3") {
  const auto r = run_cli("verify no-such-scenario");
  CHECK(r.exit_code == 3);
}
