#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bqsim {

/// One verified expectation of a scenario: a measured quantity, its target
/// with tolerance, and the reference relation it checks (self-contained
/// statement of the asymptotic law or bound being reproduced).
struct Expectation {
  std::string quantity;
  std::string anchor;
  double target = 0.0;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
  std::string detail;
};

struct ScenarioReport {
  std::string id;
  bool pass = false;
  std::vector<Expectation> expectations;
  std::vector<std::string> artifacts;  // paths written under the run directory
  std::string run_dir;
  double runtime_seconds = 0.0;
  double max_zero_mode_violation = 0.0;
};

struct ScenarioOverrides {
  std::optional<int> dim;
  std::optional<int> points;
  std::optional<double> half_length;
  std::optional<double> mu;
  std::optional<double> p;
  std::optional<double> s;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::string> out_root;
  std::optional<std::uint64_t> seed;
  bool strict = false;
};

struct ScenarioInfo {
  std::string id;
  std::string anchor;  // one-line statement of what the scenario reproduces
};

/// Catalog of runnable scenarios, in stable order.
std::vector<ScenarioInfo> list_scenarios();
std::string list_scenarios_json();

/// Runs one scenario by id, writing manifest.json, series.csv and any extra
/// artifacts under <out_root>/<id>/<timestamp>/ and returning structured
/// pass/fail. Throws std::invalid_argument for unknown ids.
ScenarioReport run_scenario(const std::string& id,
                            const ScenarioOverrides& overrides = {});

/// Default output root: $BQSIM_OUT_ROOT or ./out.
std::string default_out_root();

/// Renders a report as text lines (one per expectation) plus a summary line.
std::string format_report(const ScenarioReport& report);
std::string report_json(const ScenarioReport& report);

}  // namespace bqsim
