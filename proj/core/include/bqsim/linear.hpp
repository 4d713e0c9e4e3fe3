#pragma once

#include <span>

#include "bqsim/field.hpp"
#include "bqsim/norms.hpp"
#include "bqsim/series.hpp"
#include "bqsim/symbols.hpp"

namespace bqsim {

enum class ProfileSubtraction { v1, v1_plus_v2 };

/// Exact per-mode evolution of the linearized equation
///   v_tt - Lap v + Lap^2 v + 2 mu Lap^2 v_t = 0
/// from cached data spectra: vhat(t) = K0hat vhat0 + K1hat vhat1. Evolution
/// is exact in time; the only discretization error comes from the box/grid.
class LinearSolution {
 public:
  LinearSolution(const Field& v0, const Field& v1, const ModelParams& params);

  const GridSpec& grid() const { return grid_; }
  const ModelParams& params() const { return params_; }

  double moment_p_v0() const { return p_v0_; }
  double moment_p_v1() const { return p_v1_; }
  const std::array<double, 3>& moment_m_v1() const { return m_v1_; }

  /// Cached data spectra (zero mode at flat index 0).
  std::span<const std::complex<double>> v0_hat() const { return v0_hat_; }
  std::span<const std::complex<double>> v1_hat() const { return v1_hat_; }

  /// Spectral field with coefficients K0(t,|xi|) vhat0 + K1(t,|xi|) vhat1.
  Field evolve(double t) const;

  /// Time derivative, from dK0/dt = -(r^2+r^4) K1 and dK1/dt = K0 - 2mu r^4 K1.
  Field evolve_time_derivative(double t) const;

  /// Leading profile, spectral coefficients G1(t,|xi|) P_{v1}.
  Field profile_v1(double t) const;

  /// Second profile, spectral coefficients
  ///   G0 P_{v0} - i G1 (xi . M_{v1}) - (t/8)|xi|^4 G0 P_{v1},
  /// with Nyquist modes zeroed in the odd (i xi) term.
  Field profile_v2(double t) const;

  /// Hdot^s norm of v(t) minus the requested profiles at each listed time.
  NormSeries error_series(double s, std::span<const double> times,
                          ProfileSubtraction subtract) const;

  /// Hdot^s norm of v(t) itself.
  double norm_at(double t, double s) const;

 private:
  GridSpec grid_;
  ModelParams params_;
  std::vector<std::complex<double>> v0_hat_;
  std::vector<std::complex<double>> v1_hat_;
  double p_v0_;
  double p_v1_;
  std::array<double, 3> m_v1_;
};

}  // namespace bqsim
