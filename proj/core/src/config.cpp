#include "bqsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bqsim/io.hpp"

namespace bqsim {

std::vector<double> linear_spaced(double a, double b, int count) {
  if (count < 2) throw std::invalid_argument("linear_spaced: count must be >= 2");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = a + (b - a) * static_cast<double>(i) / (count - 1);
  out.back() = b;
  return out;
}

std::vector<double> log_spaced(double a, double b, int count) {
  if (!(a > 0.0 && b > a))
    throw std::invalid_argument("log_spaced: requires 0 < a < b");
  if (count < 2) throw std::invalid_argument("log_spaced: count must be >= 2");
  std::vector<double> out(count);
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < count; ++i)
    out[i] = std::exp(la + (lb - la) * static_cast<double>(i) / (count - 1));
  out.back() = b;
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::array<double, 3> parse_vec3(const std::string& s) {
  const auto list = parse_list(s);
  std::array<double, 3> v{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < std::min<std::size_t>(3, list.size()); ++i)
    v[i] = list[i];
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  throw std::invalid_argument("config: bad boolean value '" + s + "'");
}

void apply_data_key(DataSpec& data, const std::string& sub, const std::string& value) {
  if (sub == "preset")
    data.preset = value;
  else if (sub == "amplitude")
    data.amplitude = std::stod(value);
  else if (sub == "width")
    data.width = std::stod(value);
  else if (sub == "shift")
    data.shift = parse_vec3(value);
  else
    throw std::invalid_argument("config: unknown data key '" + sub + "'");
}

}  // namespace

SimConfig parse_sim_config(const std::string& text) {
  SimConfig cfg;
  int output_count = 0;
  double output_start = 0.0;

  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "dim")
      cfg.dim = std::stoi(value);
    else if (key == "N")
      cfg.points = std::stoi(value);
    else if (key == "L")
      cfg.half_length = std::stod(value);
    else if (key == "mu")
      cfg.mu = std::stod(value);
    else if (key == "p")
      cfg.nonlinearity.p = std::stod(value);
    else if (key == "form") {
      if (value == "signed")
        cfg.nonlinearity.form = NonlinearityForm::signed_power;
      else if (value == "modulus")
        cfg.nonlinearity.form = NonlinearityForm::modulus;
      else
        throw std::invalid_argument("config: form must be signed or modulus");
    } else if (key == "sign")
      cfg.nonlinearity.sign = std::stod(value);
    else if (key == "scale")
      cfg.nonlinearity.scale = std::stod(value);
    else if (key.rfind("u0_", 0) == 0)
      apply_data_key(cfg.u0, key.substr(3), value);
    else if (key.rfind("u1_", 0) == 0)
      apply_data_key(cfg.u1, key.substr(3), value);
    else if (key == "dt")
      cfg.dt = std::stod(value);
    else if (key == "t_end")
      cfg.t_end = std::stod(value);
    else if (key == "output_times")
      cfg.output_times = parse_list(value);
    else if (key == "output_count")
      output_count = std::stoi(value);
    else if (key == "output_start")
      output_start = std::stod(value);
    else if (key == "s")
      cfg.sobolev_s = std::stod(value);
    else if (key == "strict")
      cfg.strict = parse_bool(value);
    else if (key == "blowup_ceiling")
      cfg.blowup_ceiling = std::stod(value);
    else if (key == "step_tol")
      cfg.step_tol = std::stod(value);
    else if (key == "seed")
      cfg.seed = std::stoull(value);
    else if (key == "snapshot_times")
      cfg.snapshot_times = parse_list(value);
    else if (key == "out_dir")
      cfg.out_dir = value;
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }

  if (cfg.output_times.empty() && output_count > 1) {
    const double start = output_start > 0.0 ? output_start : cfg.t_end / 100.0;
    cfg.output_times = log_spaced(start, cfg.t_end, output_count);
  }
  return cfg;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_sim_config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sim_config(ss.str());
}

namespace {

std::string join_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

std::string format_sim_config(const SimConfig& c) {
  std::ostringstream out;
  out << "dim = " << c.dim << "\n";
  out << "N = " << c.points << "\n";
  out << "L = " << format_double(c.half_length) << "\n";
  out << "mu = " << format_double(c.mu) << "\n";
  out << "p = " << format_double(c.nonlinearity.p) << "\n";
  out << "form = "
      << (c.nonlinearity.form == NonlinearityForm::signed_power ? "signed"
                                                                : "modulus")
      << "\n";
  out << "sign = " << format_double(c.nonlinearity.sign) << "\n";
  out << "scale = " << format_double(c.nonlinearity.scale) << "\n";
  auto emit_data = [&](const char* prefix, const DataSpec& d) {
    out << prefix << "_preset = " << d.preset << "\n";
    out << prefix << "_amplitude = " << format_double(d.amplitude) << "\n";
    out << prefix << "_width = " << format_double(d.width) << "\n";
    out << prefix << "_shift = " << d.shift[0] << "," << d.shift[1] << ","
        << d.shift[2] << "\n";
  };
  emit_data("u0", c.u0);
  emit_data("u1", c.u1);
  out << "dt = " << format_double(c.dt) << "\n";
  out << "t_end = " << format_double(c.t_end) << "\n";
  if (!c.output_times.empty()) out << "output_times = " << join_list(c.output_times) << "\n";
  out << "s = " << format_double(c.sobolev_s) << "\n";
  out << "strict = " << (c.strict ? "true" : "false") << "\n";
  out << "blowup_ceiling = " << format_double(c.blowup_ceiling) << "\n";
  out << "step_tol = " << format_double(c.step_tol) << "\n";
  out << "seed = " << c.seed << "\n";
  if (!c.snapshot_times.empty())
    out << "snapshot_times = " << join_list(c.snapshot_times) << "\n";
  if (!c.out_dir.empty()) out << "out_dir = " << c.out_dir << "\n";
  return out.str();
}

std::string manifest_json(const SimConfig& c, const RunResult& r) {
  nlohmann::json j;
  j["model"] = {{"dim", c.dim},
                {"N", c.points},
                {"L", c.half_length},
                {"mu", c.mu}};
  j["nonlinearity"] = {
      {"p", c.nonlinearity.p},
      {"form",
       c.nonlinearity.form == NonlinearityForm::signed_power ? "signed" : "modulus"},
      {"sign", c.nonlinearity.sign},
      {"scale", c.nonlinearity.scale}};
  auto data_json = [](const DataSpec& d) {
    return nlohmann::json{{"preset", d.preset},
                          {"amplitude", d.amplitude},
                          {"width", d.width},
                          {"shift", {d.shift[0], d.shift[1], d.shift[2]}}};
  };
  j["data"] = {{"u0", data_json(c.u0)}, {"u1", data_json(c.u1)}};
  j["integration"] = {{"dt", c.effective_dt()},
                      {"t_end", c.t_end},
                      {"step_tol", c.step_tol},
                      {"blowup_ceiling", c.blowup_ceiling},
                      {"strict", c.strict},
                      {"seed", c.seed}};
  j["constants"] = {{"P_u0", r.p_u0},
                    {"P_u1", r.p_u1},
                    {"M_u1", {r.m_u1[0], r.m_u1[1], r.m_u1[2]}}};
  j["diagnostics"] = {{"max_zero_mode_violation", r.max_zero_mode_violation},
                      {"max_boundary_ratio", r.max_boundary_ratio},
                      {"max_pc_discrepancy", r.max_pc_discrepancy},
                      {"steps_taken", r.steps_taken},
                      {"blew_up", r.blew_up},
                      {"blowup_time", r.blowup_time}};
  return j.dump(2);
}

}  // namespace bqsim
