#pragma once

#include <map>
#include <string>
#include <vector>

#include "bqsim/nonlinear.hpp"

namespace bqsim {

/// Evenly spaced sample times.
std::vector<double> linear_spaced(double a, double b, int count);
/// Logarithmically spaced sample times (a, b > 0).
std::vector<double> log_spaced(double a, double b, int count);

/// Parses the documented key=value run configuration format:
/// one `key = value` pair per line, '#' comments, lists comma-separated.
/// Keys: dim, N, L, mu, p, form (signed|modulus), sign, scale,
/// u0_preset, u0_amplitude, u0_width, u0_shift, u1_* (same), dt, t_end,
/// output_times or output_count/output_start (log-spaced up to t_end),
/// s, strict, blowup_ceiling, step_tol, seed, snapshot_times, out_dir.
SimConfig parse_sim_config(const std::string& text);
SimConfig load_sim_config(const std::string& path);

/// Serializes a config back to the key=value format (round-trips through
/// parse_sim_config).
std::string format_sim_config(const SimConfig& config);

/// JSON run manifest with every parameter and the data constants.
std::string manifest_json(const SimConfig& config, const RunResult& result);

}  // namespace bqsim
