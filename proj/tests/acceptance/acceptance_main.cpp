// Acceptance suite: runs every verification scenario and prints one pass/fail
// line per acceptance criterion. Exit code 0 only when all criteria pass.

#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "bqsim/scenarios.hpp"

namespace {

struct Criterion {
  int number;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;
};

bool starts_with(const std::string& s, const char* prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  bqsim::ScenarioOverrides overrides;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc)
      overrides.out_root = argv[++i];
  }
  if (!overrides.out_root) overrides.out_root = "acceptance_out";

  std::map<std::string, bqsim::ScenarioReport> reports;
  const std::vector<std::string> order{
      "mode-exactness", "expansion-orders", "error-kernels", "multiplier-norms",
      "table1",         "linear-optimal",   "leading-term",  "second-profile",
      "nonlinear-decay", "nonlinear-profile", "self-convergence"};

  bool runtime_failure = false;
  for (const auto& id : order) {
    std::fprintf(stderr, "... running %s\n", id.c_str());
    try {
      reports[id] = bqsim::run_scenario(id, overrides);
      std::fprintf(stderr, "    %s in %.1f s\n",
                   reports[id].pass ? "pass" : "FAIL",
                   reports[id].runtime_seconds);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "    scenario %s raised: %s\n", id.c_str(), e.what());
      runtime_failure = true;
    }
  }

  std::vector<Criterion> criteria{
      {1, "mode exactness vs adaptive ODE oracle (rel 1e-9)"},
      {2, "order-5 expansion remainder bounded, variation < 10x"},
      {3, "error-kernel constants finite, < 5% under refinement"},
      {4, "multiplier-norm slopes and the n=2 log law"},
      {5, "gamma limits of the oscillatory moment integrals (1%)"},
      {6, "simulated linear optimal growth/decay rates"},
      {7, "leading-term error slope; second profile improves it"},
      {8, "nonlinear rates at n=2, p=5 with small data"},
      {9, "integrator self-convergence order 2.0 +- 0.2"},
      {10, "zero-mode law below 1e-12 in every run"},
  };
  auto& by_number = criteria;

  auto fold = [&](int number, const std::string& scenario_id,
                  auto&& expectation_filter) {
    auto it = reports.find(scenario_id);
    if (it == reports.end()) {
      by_number[number - 1].pass = false;
      by_number[number - 1].notes.push_back(scenario_id + ": did not run");
      return;
    }
    for (const auto& e : it->second.expectations) {
      if (!expectation_filter(e.quantity)) continue;
      if (!e.pass) {
        by_number[number - 1].pass = false;
        by_number[number - 1].notes.push_back(
            scenario_id + ": " + e.quantity + " observed " +
            std::to_string(e.observed) + " vs target " + std::to_string(e.target));
      }
    }
  };
  auto all = [](const std::string&) { return true; };

  fold(1, "mode-exactness", all);
  fold(2, "expansion-orders", all);
  fold(3, "error-kernels", all);
  fold(4, "multiplier-norms", all);
  fold(4, "table1", all);
  fold(5, "leading-term",
       [](const std::string& q) { return starts_with(q, "gamma:"); });
  fold(6, "linear-optimal", all);
  fold(7, "leading-term",
       [](const std::string& q) { return starts_with(q, "leading-error-slope"); });
  fold(7, "second-profile", all);
  fold(8, "nonlinear-decay", all);
  fold(8, "nonlinear-profile", all);
  fold(9, "self-convergence", all);

  double max_zero_mode = 0.0;
  for (const auto& [id, report] : reports)
    max_zero_mode = std::max(max_zero_mode, report.max_zero_mode_violation);
  by_number[9].pass = !reports.empty() && max_zero_mode < 1e-12;
  by_number[9].notes.push_back("max |uhat(t,0) - uhat0(0) - t uhat1(0)| = " +
                               std::to_string(max_zero_mode));

  bool all_pass = !runtime_failure;
  for (const auto& c : criteria) {
    std::printf("[%s] criterion %2d: %s\n", c.pass ? "PASS" : "FAIL", c.number,
                c.title.c_str());
    for (const auto& note : c.notes)
      if (!c.pass || c.number == 10) std::printf("        %s\n", note.c_str());
    all_pass &= c.pass;
  }
  if (runtime_failure) std::printf("[FAIL] one or more scenarios raised errors\n");
  std::printf("%s\n", all_pass ? "ACCEPTANCE: ALL CRITERIA PASS"
                               : "ACCEPTANCE: FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
