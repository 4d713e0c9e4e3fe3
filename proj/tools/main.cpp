// Command-line front end: scenario verification, free-form simulation runs,
// and rate fitting of recorded norm series.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "bqsim/config.hpp"
#include "bqsim/fit.hpp"
#include "bqsim/io.hpp"
#include "bqsim/nonlinear.hpp"
#include "bqsim/scenarios.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitExpectationFailure = 2;
constexpr int kExitRuntimeError = 3;

struct CommonFlags {
  std::optional<int> n;       // dimension
  std::optional<int> points;  // N per axis
  std::optional<double> half_length;
  std::optional<double> mu;
  std::optional<double> p;
  std::optional<double> s;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  bool strict = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--n", flags.n, "Space dimension (1, 2 or 3)");
  cmd->add_option("--N", flags.points, "Grid points per axis");
  cmd->add_option("--L", flags.half_length, "Box half-length");
  cmd->add_option("--mu", flags.mu, "Dissipation coefficient in (0,1)");
  cmd->add_option("--p", flags.p, "Nonlinearity power");
  cmd->add_option("--s", flags.s, "Sobolev order for recorded norms");
  cmd->add_option("--dt", flags.dt, "Time step (default: 0.5 dx cap)");
  cmd->add_option("--t-end", flags.t_end, "Final time");
  cmd->add_option("--out", flags.out, "Output root directory");
  cmd->add_option("--seed", flags.seed, "Random seed recorded in the manifest");
  cmd->add_flag("--strict", flags.strict, "Escalate warnings to errors");
}

bqsim::ScenarioOverrides to_overrides(const CommonFlags& flags) {
  bqsim::ScenarioOverrides ov;
  ov.dim = flags.n;
  ov.points = flags.points;
  ov.half_length = flags.half_length;
  ov.mu = flags.mu;
  ov.p = flags.p;
  ov.s = flags.s;
  ov.dt = flags.dt;
  ov.t_end = flags.t_end;
  ov.out_root = flags.out;
  ov.seed = flags.seed;
  ov.strict = flags.strict;
  return ov;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral simulator and verification harness for the "
               "dissipative Boussinesq equation"};
  app.require_subcommand(1);

  // list
  auto* list_cmd = app.add_subcommand("list", "List runnable scenarios");
  bool list_json = false;
  list_cmd->add_flag("--json", list_json, "Machine-readable output");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run one verification scenario");
  std::string scenario_id;
  verify_cmd->add_option("scenario", scenario_id, "Scenario id (see `list`)")
      ->required();
  CommonFlags verify_flags;
  add_common_flags(verify_cmd, verify_flags);
  bool verify_json = false;
  verify_cmd->add_flag("--json", verify_json, "Emit the report as JSON");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Run a nonlinear simulation");
  std::string config_path;
  sim_cmd->add_option("--config", config_path, "key = value run configuration file");
  CommonFlags sim_flags;
  add_common_flags(sim_cmd, sim_flags);
  std::string form = "";
  sim_cmd->add_option("--form", form, "Nonlinearity form: signed | modulus");
  std::optional<double> amplitude;
  sim_cmd->add_option("--amplitude", amplitude, "u1 gaussian amplitude");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit a rate to a recorded CSV series");
  std::string csv_path;
  fit_cmd->add_option("csv", csv_path, "series.csv with t,label,value rows")->required();
  std::string label;
  fit_cmd->add_option("--label", label, "Series label (default: the only one)");
  double fit_tmin = 0.0, fit_tmax = 0.0;
  fit_cmd->add_option("--t-min", fit_tmin, "Fit window lower edge");
  fit_cmd->add_option("--t-max", fit_tmax, "Fit window upper edge");
  std::string mode = "power";
  fit_cmd->add_option("--mode", mode, "power | log");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list_cmd) {
      if (list_json) {
        std::cout << bqsim::list_scenarios_json() << "\n";
      } else {
        for (const auto& s : bqsim::list_scenarios())
          std::cout << s.id << "\t" << s.anchor << "\n";
      }
      return kExitPass;
    }

    if (*verify_cmd) {
      const auto report = bqsim::run_scenario(scenario_id, to_overrides(verify_flags));
      if (verify_json)
        std::cout << bqsim::report_json(report) << "\n";
      else
        std::cout << bqsim::format_report(report);
      return report.pass ? kExitPass : kExitExpectationFailure;
    }

    if (*sim_cmd) {
      bqsim::SimConfig cfg;
      if (!config_path.empty()) cfg = bqsim::load_sim_config(config_path);
      if (sim_flags.n) cfg.dim = *sim_flags.n;
      if (sim_flags.points) cfg.points = *sim_flags.points;
      if (sim_flags.half_length) cfg.half_length = *sim_flags.half_length;
      if (sim_flags.mu) cfg.mu = *sim_flags.mu;
      if (sim_flags.p) cfg.nonlinearity.p = *sim_flags.p;
      if (sim_flags.s) cfg.sobolev_s = *sim_flags.s;
      if (sim_flags.dt) cfg.dt = *sim_flags.dt;
      if (sim_flags.t_end) cfg.t_end = *sim_flags.t_end;
      if (sim_flags.seed) cfg.seed = *sim_flags.seed;
      if (sim_flags.strict) cfg.strict = true;
      if (amplitude) cfg.u1.amplitude = *amplitude;
      if (!form.empty()) {
        if (form == "signed")
          cfg.nonlinearity.form = bqsim::NonlinearityForm::signed_power;
        else if (form == "modulus")
          cfg.nonlinearity.form = bqsim::NonlinearityForm::modulus;
        else
          throw std::invalid_argument("--form must be signed or modulus");
      }
      if (cfg.output_times.empty())
        cfg.output_times = bqsim::log_spaced(cfg.t_end / 100.0, cfg.t_end, 25);

      std::string out_root =
          sim_flags.out.value_or(cfg.out_dir.empty() ? bqsim::default_out_root()
                                                     : cfg.out_dir);
      cfg.out_dir = out_root + "/simulate";
      std::filesystem::create_directories(cfg.out_dir);

      const auto result = bqsim::run_simulation(cfg);
      {
        std::ofstream mf(cfg.out_dir + "/manifest.json");
        mf << bqsim::manifest_json(cfg, result) << "\n";
      }
      std::cout << "wrote " << cfg.out_dir << "/series.csv"
                << " (P_u1 = " << bqsim::format_double(result.p_u1)
                << ", steps = " << result.steps_taken << ")\n";
      if (result.blew_up) {
        std::cout << "blow-up signalled at t = "
                  << bqsim::format_double(result.blowup_time) << "\n";
        return kExitExpectationFailure;
      }
      return kExitPass;
    }

    if (*fit_cmd) {
      const auto series_list = bqsim::read_series_csv(csv_path);
      const bqsim::NormSeries* chosen = nullptr;
      for (const auto& s : series_list)
        if (label.empty() ? series_list.size() == 1 : s.label == label) chosen = &s;
      if (!chosen)
        throw std::invalid_argument(
            label.empty() ? "fit: file holds several series, pass --label"
                          : "fit: no series labeled '" + label + "'");
      bqsim::FitWindow window{fit_tmin > 0.0 ? fit_tmin : chosen->times.front(),
                              fit_tmax > 0.0 ? fit_tmax : chosen->times.back()};
      const auto mode_enum =
          mode == "log" ? bqsim::FitMode::log_growth : bqsim::FitMode::power_law;
      const auto fit = bqsim::fit_rate(*chosen, window, mode_enum);
      if (mode_enum == bqsim::FitMode::power_law)
        std::cout << "label " << chosen->label << " slope "
                  << bqsim::format_double(fit.slope) << " intercept "
                  << bqsim::format_double(fit.intercept) << " r2 "
                  << bqsim::format_double(fit.r_squared) << "\n";
      else
        std::cout << "label " << chosen->label << " constant "
                  << bqsim::format_double(fit.intercept) << " drift "
                  << bqsim::format_double(fit.slope) << "\n";
      return kExitPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitRuntimeError;
}
