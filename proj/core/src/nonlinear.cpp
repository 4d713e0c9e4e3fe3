#include "bqsim/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "bqsim/io.hpp"
#include "bqsim/norms.hpp"

namespace bqsim {

void NonlinearitySpec::validate() const {
  if (!(p > 1.0)) throw std::invalid_argument("NonlinearitySpec: p must be > 1");
  if (sign != 1.0 && sign != -1.0)
    throw std::invalid_argument("NonlinearitySpec: sign must be +1 or -1");
  if (!(scale >= 0.0))
    throw std::invalid_argument("NonlinearitySpec: scale must be >= 0");
}

Field apply_nonlinearity(const Field& u, const NonlinearitySpec& spec) {
  spec.validate();
  const GridSpec& grid = u.grid();
  if (spec.scale == 0.0) return Field::zeros(grid, Representation::spectral);

  Field phys_storage = Field::zeros(grid, Representation::physical);
  const Field& up = u.is_physical() ? u : (phys_storage = to_physical(u), phys_storage);

  std::vector<double> f(grid.size());
  const auto values = up.physical();
  const double coeff = spec.scale * spec.sign;
  const double p = spec.p;
  bool finite = true;
  if (spec.form == NonlinearityForm::signed_power) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double v = values[i];
      const double w = coeff * std::pow(std::abs(v), p - 1.0) * v;
      finite &= std::isfinite(w);
      f[i] = w;
    }
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double w = coeff * std::pow(std::abs(values[i]), p);
      finite &= std::isfinite(w);
      f[i] = w;
    }
  }
  if (!finite)
    throw BlowupError(0.0, "apply_nonlinearity: non-finite value (blow-up signal)");

  Field fhat = to_spectral(Field::from_physical(grid, std::move(f)));
  // 2/3-rule dealiasing: zero every mode with any axis index |k| > N/3.
  const int kmax = grid.points_per_axis() / 3;
  auto& coeffs = fhat.spectral_data();
  const int n = grid.points_per_axis();
  const std::size_t total = grid.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto m = grid.unflatten(flat);
    for (int d = 0; d < grid.dim(); ++d) {
      const int k = m[d] < n / 2 ? m[d] : m[d] - n;
      if (std::abs(k) > kmax) {
        coeffs[flat] = 0.0;
        break;
      }
    }
  }
  return fhat;
}

SimState::SimState(const Field& u0, const Field& u1, const ModelParams& p,
                   const NonlinearitySpec& nl)
    : grid(u0.grid()), params(p), nonlinearity(nl) {
  nl.validate();
  if (!(u1.grid() == grid)) throw std::invalid_argument("SimState: grids differ");
  auto spectrum = [](const Field& f) {
    if (f.is_spectral()) {
      auto view = f.spectral();
      return std::vector<std::complex<double>>(view.begin(), view.end());
    }
    Field g = to_spectral(f);
    auto view = g.spectral();
    return std::vector<std::complex<double>>(view.begin(), view.end());
  };
  u_hat = spectrum(u0);
  ut_hat = spectrum(u1);
  u0_zero = u_hat[0];
  u1_zero = ut_hat[0];
}

Field SimState::u_field() const {
  return Field::from_spectral(grid, u_hat);
}

Field SimState::ut_field() const {
  return Field::from_spectral(grid, ut_hat);
}

DuhamelStepper::DuhamelStepper(const GridSpec& grid, const ModelParams& params,
                               double dt)
    : dt_(dt), params_(params) {
  if (!(dt > 0.0)) throw std::invalid_argument("DuhamelStepper: dt must be > 0");
  coeffs_.resize(grid.size());
  r2_.resize(grid.size());
  for_each_mode(grid, [&](std::size_t flat, double r, bool) {
    coeffs_[flat] = step_coefficients(dt, r, params);
    r2_[flat] = r * r;
  });
}

SimState DuhamelStepper::step(const SimState& state, double tol,
                              StepDiagnostics* diag) const {
  const std::size_t total = state.grid.size();
  if (coeffs_.size() != total)
    throw std::invalid_argument("DuhamelStepper: grid mismatch");

  // Forcing at the left endpoint: ghat0 = -r^2 fhat(u(t)).
  const Field f0 = apply_nonlinearity(state.u_field(), state.nonlinearity);
  const auto f0_hat = f0.spectral();

  // Predictor: exact linear flow plus the frozen-forcing moment.
  SimState pred = state;
  pred.t = state.t + dt_;
  for (std::size_t i = 0; i < total; ++i) {
    const auto& c = coeffs_[i];
    const std::complex<double> g0 = -r2_[i] * f0_hat[i];
    pred.u_hat[i] = c.k0 * state.u_hat[i] + c.k1 * state.ut_hat[i] + c.int_k1 * g0;
    pred.ut_hat[i] = c.dk0 * state.u_hat[i] + c.dk1 * state.ut_hat[i] + c.k1 * g0;
  }
  pred.u_hat[0] = state.u0_zero + pred.t * state.u1_zero;
  pred.ut_hat[0] = state.u1_zero;

  // Corrector: trapezoidal weighting of the endpoint forcings through the
  // closed-form moments m0 = int K1 and m1 = m0 - J/dt (J = int s K1(s) ds).
  const Field f1 = apply_nonlinearity(pred.u_field(), state.nonlinearity);
  const auto f1_hat = f1.spectral();

  SimState next = state;
  next.t = state.t + dt_;
  double disc2 = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    const auto& c = coeffs_[i];
    const std::complex<double> g0 = -r2_[i] * f0_hat[i];
    const std::complex<double> g1 = -r2_[i] * f1_hat[i];
    const double m1 = c.int_k1 - c.int_s_k1 / dt_;
    const double q1 = c.int_k1 / dt_;
    next.u_hat[i] = c.k0 * state.u_hat[i] + c.k1 * state.ut_hat[i] +
                    (c.int_k1 - m1) * g0 + m1 * g1;
    next.ut_hat[i] = c.dk0 * state.u_hat[i] + c.dk1 * state.ut_hat[i] +
                     (c.k1 - q1) * g0 + q1 * g1;
    disc2 += std::norm(next.u_hat[i] - pred.u_hat[i]);
    norm2 += std::norm(next.u_hat[i]);
  }
  next.u_hat[0] = state.u0_zero + next.t * state.u1_zero;
  next.ut_hat[0] = state.u1_zero;

  const double discrepancy = std::sqrt(disc2) / std::max(std::sqrt(norm2), 1e-300);
  if (diag) {
    diag->pc_discrepancy = discrepancy;
    diag->rejected = discrepancy > tol;
  }
  return next;
}

SimState duhamel_step(const SimState& state, double dt, double tol,
                      StepDiagnostics* diag) {
  DuhamelStepper stepper(state.grid, state.params, dt);
  return stepper.step(state, tol, diag);
}

Field make_data(const GridSpec& grid, const DataSpec& spec) {
  if (spec.preset == "zero" || spec.amplitude == 0.0)
    return Field::zeros(grid, Representation::physical);
  if (spec.preset == "gaussian") {
    const double inv_w2 = 1.0 / (spec.width * spec.width);
    return make_physical(grid, [&](const std::array<double, 3>& x) {
      double q = 0.0;
      for (int d = 0; d < grid.dim(); ++d) {
        const double dx = x[d] - spec.shift[d];
        q += dx * dx;
      }
      return spec.amplitude * std::exp(-q * inv_w2);
    });
  }
  if (spec.preset == "gaussian_x") {
    const double inv_w2 = 1.0 / (spec.width * spec.width);
    return make_physical(grid, [&](const std::array<double, 3>& x) {
      double q = 0.0;
      for (int d = 0; d < grid.dim(); ++d) {
        const double dx = x[d] - spec.shift[d];
        q += dx * dx;
      }
      return spec.amplitude * (x[0] - spec.shift[0]) * std::exp(-q * inv_w2);
    });
  }
  if (spec.preset == "delta") {
    Field f = grid_delta(grid, spec.shift);
    for (auto& v : f.physical_data()) v *= spec.amplitude;
    return f;
  }
  throw std::invalid_argument("make_data: unknown preset '" + spec.preset + "'");
}

double SimConfig::effective_dt() const {
  const double cap = 0.5 * (2.0 * half_length / points);
  if (dt == 0.0) return cap;
  return dt;
}

const NormSeries& RunResult::series_labeled(const std::string& label) const {
  for (const auto& s : series)
    if (s.label == label) return s;
  throw std::out_of_range("RunResult: no series labeled " + label);
}

RunResult run_simulation(const SimConfig& config) {
  config.nonlinearity.validate();
  GridSpec grid(config.dim, config.points, config.half_length);
  const ModelParams params(config.mu);

  const double dt = config.effective_dt();
  const double cap = 0.5 * grid.dx();
  if (dt > cap * (1.0 + 1e-12))
    throw std::invalid_argument("run_simulation: dt exceeds the 0.5 dx accuracy cap");
  if (!(config.t_end > 0.0))
    throw std::invalid_argument("run_simulation: t_end must be > 0");

  const Field u0 = make_data(grid, config.u0);
  const Field u1 = make_data(grid, config.u1);

  RunResult result;
  result.p_u0 = moment_P(u0, config.strict);
  result.p_u1 = moment_P(u1, config.strict);
  result.m_u1 = moment_M(u1, config.strict);

  SimState state(u0, u1, params, config.nonlinearity);

  std::vector<double> outputs = config.output_times;
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
  for (double t : outputs)
    if (!(t > 0.0 && t <= config.t_end + 1e-9))
      throw std::invalid_argument("run_simulation: output times must lie in (0, t_end]");
  if (outputs.empty() || outputs.back() < config.t_end)
    outputs.push_back(config.t_end);

  NormSeries l2, hs, l6, linf, profile_err;
  l2.label = "L2";
  hs.label = "Hdot:s=" + std::to_string(config.sobolev_s);
  l6.label = "L6";
  linf.label = "Linf";
  profile_err.label = "profile_err:s=" + std::to_string(config.profile_error_s);

  DuhamelStepper stepper(grid, params, dt);

  auto record = [&](double t) {
    Field u_spec = state.u_field();
    Field u_phys = to_physical(u_spec);
    l2.push(t, sobolev_norm(u_spec, 0.0));
    hs.push(t, sobolev_norm(u_spec, config.sobolev_s));
    l6.push(t, lebesgue_norm(u_phys, 6.0));
    const double sup = lebesgue_norm(u_phys, kInfinityNorm);
    linf.push(t, sup);
    result.max_boundary_ratio =
        std::max(result.max_boundary_ratio, boundary_tail_ratio(u_phys));
    const std::complex<double> zero_law =
        state.u_hat[0] - state.u0_zero - t * state.u1_zero;
    result.max_zero_mode_violation =
        std::max(result.max_zero_mode_violation, std::abs(zero_law));
    if (config.profile_error_s >= 0.0) {
      Field err = nonlinear_profile_u1(state, t);
      auto& coeffs = err.spectral_data();
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        coeffs[i] = state.u_hat[i] - coeffs[i];
      profile_err.push(t, sobolev_norm(err, config.profile_error_s));
    }
    if (sup > config.blowup_ceiling)
      throw BlowupError(t, "run_simulation: Linf ceiling exceeded");
    for (double ts : config.snapshot_times) {
      if (std::abs(ts - t) < 1e-12 * std::max(1.0, ts) && !config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        write_snapshot(config.out_dir + "/snapshot_t" + format_double(t) + ".bqsf",
                       u_phys);
      }
    }
  };

  double t = 0.0;
  try {
    std::size_t next_output = 0;
    while (next_output < outputs.size()) {
      const double target = outputs[next_output];
      while (t < target - 1e-12 * std::max(1.0, target)) {
        double step_dt = std::min(dt, target - t);
        StepDiagnostics diag;
        SimState candidate =
            step_dt == dt
                ? stepper.step(state, config.step_tol, &diag)
                : DuhamelStepper(grid, params, step_dt).step(state, config.step_tol, &diag);
        result.max_pc_discrepancy =
            std::max(result.max_pc_discrepancy, diag.pc_discrepancy);
        if (diag.rejected) {
          // Halve the step until the predictor/corrector discrepancy is
          // acceptable; give up after a few levels and signal blow-up.
          double sub_dt = 0.5 * step_dt;
          int level = 0;
          bool accepted = false;
          while (level < 6 && !accepted) {
            StepDiagnostics sub_diag;
            SimState sub =
                DuhamelStepper(grid, params, sub_dt).step(state, config.step_tol, &sub_diag);
            if (!sub_diag.rejected) {
              candidate = sub;
              accepted = true;
            } else {
              sub_dt *= 0.5;
              ++level;
            }
          }
          if (!accepted)
            throw BlowupError(t, "run_simulation: step rejection persists under halving");
          step_dt = sub_dt;
        }
        state = candidate;
        t = state.t;
        ++result.steps_taken;
      }
      record(target);
      ++next_output;
    }
  } catch (const BlowupError& e) {
    result.blew_up = true;
    result.blowup_time = e.t > 0.0 ? e.t : t;
    if (config.strict) throw;
  }

  result.series = {l2, hs, l6, linf};
  if (config.profile_error_s >= 0.0) result.series.push_back(profile_err);
  result.final_state = std::move(state);

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    write_series_csv(config.out_dir + "/series.csv", result.series);
  }
  return result;
}

Field nonlinear_profile_u1(const SimState& state, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("nonlinear_profile_u1: t must be > 0");
  Field out = Field::zeros(state.grid, Representation::spectral);
  auto& coeffs = out.spectral_data();
  const double p_u1 = state.u1_zero.real();
  for_each_mode(state.grid, [&](std::size_t flat, double r, bool) {
    coeffs[flat] = profile_G1_hat(t, r, state.params) * p_u1;
  });
  return out;
}

}  // namespace bqsim
