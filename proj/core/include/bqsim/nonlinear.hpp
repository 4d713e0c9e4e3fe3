#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bqsim/field.hpp"
#include "bqsim/series.hpp"
#include "bqsim/symbols.hpp"

namespace bqsim {

enum class NonlinearityForm {
  modulus,       // f(u) = |u|^p
  signed_power,  // f(u) = |u|^{p-1} u
};

struct NonlinearitySpec {
  double p = 2.0;
  NonlinearityForm form = NonlinearityForm::signed_power;
  double sign = 1.0;   // +1 or -1
  double scale = 1.0;  // 0 disables the nonlinearity entirely

  void validate() const;
};

/// Thrown when a pointwise nonlinearity evaluation produces NaN/Inf or a norm
/// exceeds the configured ceiling.
struct BlowupError : std::runtime_error {
  double t;
  explicit BlowupError(double time, const std::string& what_)
      : std::runtime_error(what_), t(time) {}
};

/// Pointwise nonlinearity in physical space, transformed back and dealiased
/// by zeroing every mode with any axis index |k| > N/3 (2/3 rule).
/// Returns a spectral field. NaN in the output raises BlowupError.
Field apply_nonlinearity(const Field& u, const NonlinearitySpec& spec);

/// The pair (uhat, ut_hat) advanced in time. The zero mode is kept in closed
/// form: f enters through Lap f, which vanishes at xi = 0, so
/// uhat(t,0) = uhat0(0) + t uhat1(0) exactly.
struct SimState {
  double t = 0.0;
  GridSpec grid;
  ModelParams params;
  NonlinearitySpec nonlinearity;
  std::vector<std::complex<double>> u_hat;
  std::vector<std::complex<double>> ut_hat;
  std::complex<double> u0_zero{};  // uhat(0) at t = 0
  std::complex<double> u1_zero{};  // ut_hat(0) at t = 0

  SimState(const Field& u0, const Field& u1, const ModelParams& p,
           const NonlinearitySpec& nl);

  Field u_field() const;   // spectral
  Field ut_field() const;  // spectral
};

struct StepDiagnostics {
  double pc_discrepancy = 0.0;  // |corrector - predictor| / |state|, spectral L2
  bool rejected = false;
};

/// One step of the exact-kernel Duhamel integrator: the linear flow of
/// (uhat, ut_hat) over dt is exact per mode, and the forcing
/// -r^2 fhat(u) is integrated against K1 with trapezoidal (two-stage
/// predictor/corrector) weighting through the closed-form moments of K1.
/// Self-convergence order 2 in dt.
class DuhamelStepper {
 public:
  DuhamelStepper(const GridSpec& grid, const ModelParams& params, double dt);

  double dt() const { return dt_; }

  /// Advances the state by dt. `tol` is the predictor/corrector discrepancy
  /// tolerance: beyond it the step is marked rejected (state still returned).
  SimState step(const SimState& state, double tol,
                StepDiagnostics* diag = nullptr) const;

 private:
  double dt_;
  ModelParams params_;
  std::vector<StepCoefficients> coeffs_;
  std::vector<double> r2_;  // -|xi|^2 forcing multiplier storage (positive r^2)
};

/// Convenience single-step entry point.
SimState duhamel_step(const SimState& state, double dt, double tol = 1e-2,
                      StepDiagnostics* diag = nullptr);

struct DataSpec {
  std::string preset = "zero";  // zero | gaussian | gaussian_x | delta
  double amplitude = 0.0;
  double width = 1.0;
  std::array<double, 3> shift{0.0, 0.0, 0.0};
};

/// Builds the preset on the grid:
///   zero        0
///   gaussian    a exp(-|x - shift|^2 / w^2)
///   gaussian_x  a (x_1 - shift_1) exp(-|x - shift|^2 / w^2)
///   delta       grid delta of mass a at the point closest to shift
Field make_data(const GridSpec& grid, const DataSpec& spec);

struct SimConfig {
  int dim = 1;
  int points = 256;
  double half_length = 40.0;
  double mu = 0.5;
  NonlinearitySpec nonlinearity;
  DataSpec u0;
  DataSpec u1;
  double dt = 0.0;  // 0 -> the accuracy cap 0.5 dx
  double t_end = 10.0;
  std::vector<double> output_times;  // ascending, positive
  double sobolev_s = 1.0;
  bool strict = false;
  double blowup_ceiling = 1e6;
  double step_tol = 1e-2;
  std::uint64_t seed = 0;
  std::vector<double> snapshot_times;
  std::string out_dir;  // when set, run_simulation writes series/snapshots here
  // When >= 0, also record ||u - G1 P_{u1}||_{Hdot^s} at output times as the
  // series "profile_err:s=<s>".
  double profile_error_s = -1.0;

  double effective_dt() const;
};

struct RunResult {
  std::vector<NormSeries> series;  // labels L2, Hdot:s=<s>, L6, Linf
  double p_u0 = 0.0;
  double p_u1 = 0.0;
  std::array<double, 3> m_u1{0.0, 0.0, 0.0};
  double max_zero_mode_violation = 0.0;
  double max_boundary_ratio = 0.0;
  double max_pc_discrepancy = 0.0;
  std::size_t steps_taken = 0;
  bool blew_up = false;
  double blowup_time = 0.0;
  std::optional<SimState> final_state;

  const NormSeries& series_labeled(const std::string& label) const;
};

/// Steps the nonlinear problem to t_end, recording L2, Hdot^s, L6 and Linf
/// norms plus the data constants P and M at the scheduled output times.
/// Blow-up and boundary-mass violations surface with the offending time
/// (as BlowupError / RuntimeError in strict mode, or flags otherwise).
RunResult run_simulation(const SimConfig& config);

/// Nonlinear leading profile G1(t,x) P_{u1}, spectral.
Field nonlinear_profile_u1(const SimState& state, double t);

}  // namespace bqsim
