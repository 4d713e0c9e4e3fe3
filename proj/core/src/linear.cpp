#include "bqsim/linear.hpp"

#include <cmath>
#include <stdexcept>

namespace bqsim {

namespace {

std::vector<std::complex<double>> spectrum_of(const Field& f) {
  if (f.is_spectral()) {
    auto view = f.spectral();
    return {view.begin(), view.end()};
  }
  Field g = to_spectral(f);
  auto view = g.spectral();
  return {view.begin(), view.end()};
}

}  // namespace

LinearSolution::LinearSolution(const Field& v0, const Field& v1,
                               const ModelParams& params)
    : grid_(v0.grid()),
      params_(params),
      v0_hat_(spectrum_of(v0)),
      v1_hat_(spectrum_of(v1)) {
  if (!(v1.grid() == grid_))
    throw std::invalid_argument("LinearSolution: v0 and v1 grids differ");
  p_v0_ = moment_P(v0);
  p_v1_ = moment_P(v1);
  m_v1_ = moment_M(v1);
}

Field LinearSolution::evolve(double t) const {
  if (t < 0.0) throw std::invalid_argument("evolve: t must be >= 0");
  Field out = Field::zeros(grid_, Representation::spectral);
  auto& coeffs = out.spectral_data();
  for_each_mode(grid_, [&](std::size_t flat, double r, bool) {
    const auto k = propagator_pair(t, r, params_);
    coeffs[flat] = k.k0 * v0_hat_[flat] + k.k1 * v1_hat_[flat];
  });
  return out;
}

Field LinearSolution::evolve_time_derivative(double t) const {
  if (t < 0.0) throw std::invalid_argument("evolve_time_derivative: t must be >= 0");
  Field out = Field::zeros(grid_, Representation::spectral);
  auto& coeffs = out.spectral_data();
  const double mu2 = 2.0 * params_.mu;
  for_each_mode(grid_, [&](std::size_t flat, double r, bool) {
    const double r2 = r * r;
    const double r4 = r2 * r2;
    const auto k = propagator_pair(t, r, params_);
    const double dk0 = -(r2 + r4) * k.k1;
    const double dk1 = k.k0 - mu2 * r4 * k.k1;
    coeffs[flat] = dk0 * v0_hat_[flat] + dk1 * v1_hat_[flat];
  });
  return out;
}

Field LinearSolution::profile_v1(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("profile_v1: t must be > 0");
  Field out = Field::zeros(grid_, Representation::spectral);
  auto& coeffs = out.spectral_data();
  for_each_mode(grid_, [&](std::size_t flat, double r, bool) {
    coeffs[flat] = profile_G1_hat(t, r, params_) * p_v1_;
  });
  return out;
}

Field LinearSolution::profile_v2(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("profile_v2: t must be > 0");
  Field out = Field::zeros(grid_, Representation::spectral);
  auto& coeffs = out.spectral_data();
  const std::complex<double> i_unit(0.0, 1.0);
  for_each_mode_vec(grid_, [&](std::size_t flat, double r, bool nyquist,
                               const std::array<double, 3>& xi) {
    const double g0 = profile_G0_hat(t, r, params_);
    const double r2 = r * r;
    std::complex<double> value = g0 * p_v0_ - 0.125 * t * r2 * r2 * g0 * p_v1_;
    if (!nyquist) {  // odd multiplier: Nyquist modes are zeroed to keep realness
      double xi_dot_m = 0.0;
      for (int d = 0; d < grid_.dim(); ++d) xi_dot_m += xi[d] * m_v1_[d];
      value -= i_unit * profile_G1_hat(t, r, params_) * xi_dot_m;
    }
    coeffs[flat] = value;
  });
  return out;
}

NormSeries LinearSolution::error_series(double s, std::span<const double> times,
                                        ProfileSubtraction subtract) const {
  if (s < 0.0) throw std::invalid_argument("error_series: s must be >= 0");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw std::invalid_argument("error_series: times must be ascending");

  NormSeries series;
  series.label = "Hdot:s=" + std::to_string(s);
  for (double t : times) {
    if (!(t > 0.0)) throw std::invalid_argument("error_series: times must be positive");
    Field err = evolve(t);
    auto& coeffs = err.spectral_data();
    {
      const Field p1 = profile_v1(t);
      const auto p = p1.spectral();
      for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= p[i];
    }
    if (subtract == ProfileSubtraction::v1_plus_v2) {
      const Field p2 = profile_v2(t);
      const auto p = p2.spectral();
      for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= p[i];
    }
    series.push(t, sobolev_norm(err, s));
  }
  return series;
}

double LinearSolution::norm_at(double t, double s) const {
  return sobolev_norm(evolve(t), s);
}

}  // namespace bqsim
