#include "bqsim/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bqsim/quadrature.hpp"

namespace bqsim {

namespace {

constexpr double kPi = std::numbers::pi;

double symbol_value(RadialSymbol symbol, double t, double r,
                    const ModelParams& params) {
  switch (symbol) {
    case RadialSymbol::G0:
      return profile_G0_hat(t, r, params);
    case RadialSymbol::G1:
      return profile_G1_hat(t, r, params);
    case RadialSymbol::GradG1: {
      const double theta = r * t * (1.0 + 0.5 * r * r);
      return std::sin(theta) * std::exp(-params.mu * r * r * r * r * t);
    }
    case RadialSymbol::BilapG0: {
      const double r2 = r * r;
      return r2 * r2 * profile_G0_hat(t, r, params);
    }
    case RadialSymbol::K0:
      return kernel_K0_hat(t, r, params);
    case RadialSymbol::K1:
      return kernel_K1_hat(t, r, params);
  }
  return 0.0;
}

// Radius where e^{-2 mu r^4 t} falls below the tail threshold.
double dissipation_cut(double t, const ModelParams& params, double tail) {
  return std::pow(std::log(1.0 / tail) / (2.0 * params.mu * t), 0.25);
}

// Radius of the degenerate circle mu^2 r^8 = r^2 + r^4, by bisection.
double degenerate_radius(const ModelParams& params) {
  double lo = 1.0, hi = 2.0;
  auto f = [&](double r) {
    const double r2 = r * r, r4 = r2 * r2;
    return params.mu * params.mu * r4 * r4 - r2 - r4;
  };
  while (f(lo) > 0.0) lo *= 0.5;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> phase_breakpoints(double a, double b, double t,
                                      std::size_t max_points) {
  // Phase of the diffusion-wave symbols: theta(r) = rt + r^3 t / 2.
  return oscillation_breakpoints(
      a, b, [t](double r) { return t * (1.0 + 1.5 * r * r); }, max_points);
}

void check_sn(double s, int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("oracle: n must be 1, 2 or 3");
  if (s < 0.0) throw std::invalid_argument("oracle: s must be >= 0");
  if (2.0 * s + n - 1.0 < 0.0)
    throw std::invalid_argument("oracle: integrand r^{2s+n-1} not integrable");
}

}  // namespace

double unit_sphere_area(int n) {
  switch (n) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * kPi;
    case 3:
      return 4.0 * kPi;
    default:
      throw std::invalid_argument("unit_sphere_area: n must be 1, 2 or 3");
  }
}

double multiplier_norm_radial(RadialSymbol symbol, double s, int n, double t,
                              const ModelParams& params,
                              const RadialQuadratureOptions& opts) {
  check_sn(s, n);
  if (!(t > 0.0)) throw std::invalid_argument("multiplier_norm_radial: t must be > 0");

  const double r_max = dissipation_cut(t, params, opts.tail_threshold);
  if (symbol == RadialSymbol::K0 || symbol == RadialSymbol::K1) {
    // Beyond the degenerate circle the K symbols stop decaying like
    // e^{-mu r^4 t}; the whole-space norm route needs the tail cut to stay
    // inside the oscillatory zone.
    if (r_max > 0.9 * degenerate_radius(params))
      throw std::invalid_argument(
          "multiplier_norm_radial: t too small for a whole-space K-symbol norm");
  }

  const double power = 2.0 * s + n - 1.0;
  auto integrand = [&](double r) {
    const double v = symbol_value(symbol, t, r, params);
    const double w = power == 0.0 ? 1.0 : std::pow(r, power);
    return w * v * v;
  };
  const auto breaks = phase_breakpoints(0.0, r_max, t, opts.max_panels / 2);
  const auto q = integrate_gk15(integrand, 0.0, r_max, opts.rel_tol, 0.0, breaks,
                                opts.max_panels);
  return std::sqrt(unit_sphere_area(n) * q.value /
                   std::pow(2.0 * kPi, static_cast<double>(n)));
}

double gaussian_moment_P(const RadialGaussianData& data, int n) {
  return data.amplitude * std::pow(data.width * std::sqrt(kPi), n);
}

namespace {

// Spectrum of a exp(-|x|^2/w^2) at radius r.
inline double gaussian_spectrum(const RadialGaussianData& data, int n, double r) {
  const double w = data.width;
  return data.amplitude * std::pow(w * std::sqrt(kPi), n) *
         std::exp(-0.25 * w * w * r * r);
}

double radial_norm_with(double s, int n, double t, const ModelParams& params,
                        const RadialGaussianData& v0, const RadialGaussianData& v1,
                        RadialSubtraction mode,
                        const RadialQuadratureOptions& opts) {
  check_sn(s, n);
  if (!(t > 0.0)) throw std::invalid_argument("radial norm: t must be > 0");

  // Tail cut: symbols are bounded by (1 + 2 mu r^4 t), data by the Gaussian
  // spectra; march the envelope until it is below threshold.
  const double w_min = std::min(v0.amplitude != 0.0 ? v0.width : 1e9,
                                v1.amplitude != 0.0 ? v1.width : 1e9);
  double r_max = dissipation_cut(t, params, opts.tail_threshold);
  if (w_min < 1e9) {
    double r_data = std::sqrt(2.0 * std::log(1.0 / opts.tail_threshold)) / w_min;
    for (int i = 0; i < 8; ++i) {
      const double r4 = r_data * r_data * r_data * r_data;
      const double extra = 2.0 * std::log1p(2.0 * params.mu * r4 * t) +
                           std::max(0.0, (2.0 * s + n - 1.0)) *
                               std::max(0.0, std::log(r_data));
      r_data = std::sqrt((2.0 * (std::log(1.0 / opts.tail_threshold) + extra)) /
                         (w_min * w_min));
    }
    r_max = std::max(r_max, std::min(r_data, 50.0));
  }

  const double p_v0 = gaussian_moment_P(v0, n);
  const double p_v1 = gaussian_moment_P(v1, n);
  const double power = 2.0 * s + n - 1.0;

  auto integrand = [&](double r) {
    const double d0 = gaussian_spectrum(v0, n, r);
    const double d1 = gaussian_spectrum(v1, n, r);
    const auto k = propagator_pair(t, r, params);
    double value = k.k0 * d0 + k.k1 * d1;
    if (mode != RadialSubtraction::none) {
      value -= profile_G1_hat(t, r, params) * p_v1;
      if (mode == RadialSubtraction::leading_plus_second) {
        const double r2 = r * r;
        const double g0 = profile_G0_hat(t, r, params);
        value -= g0 * p_v0 - 0.125 * t * r2 * r2 * g0 * p_v1;
      }
    }
    const double w = power == 0.0 ? 1.0 : std::pow(r, power);
    return w * value * value;
  };
  const auto breaks = phase_breakpoints(0.0, r_max, t, opts.max_panels / 2);
  const auto q = integrate_gk15(integrand, 0.0, r_max, opts.rel_tol, 0.0, breaks,
                                opts.max_panels);
  return std::sqrt(unit_sphere_area(n) * q.value /
                   std::pow(2.0 * kPi, static_cast<double>(n)));
}

}  // namespace

double linear_solution_norm_radial(double s, int n, double t,
                                   const ModelParams& params,
                                   const RadialGaussianData& v0,
                                   const RadialGaussianData& v1,
                                   const RadialQuadratureOptions& opts) {
  return radial_norm_with(s, n, t, params, v0, v1, RadialSubtraction::none, opts);
}

double linear_error_norm_radial(double s, int n, double t,
                                const ModelParams& params,
                                const RadialGaussianData& v0,
                                const RadialGaussianData& v1,
                                RadialSubtraction mode,
                                const RadialQuadratureOptions& opts) {
  return radial_norm_with(s, n, t, params, v0, v1, mode, opts);
}

double gamma_limit(double s, int n, int m, const ModelParams& params) {
  if (m < 0 || m > 2) throw std::invalid_argument("gamma_limit: m must be 0, 1 or 2");
  if (!(2.0 * s + n > 0.0))
    throw std::invalid_argument("gamma_limit: requires 2s + n > 0");
  const double z = 0.25 * (2.0 * s + n) + m;
  return 0.125 * std::pow(2.0 * params.mu, -0.25 * (2.0 * s + n + 4.0 * m)) *
         std::tgamma(z);
}

double oscillatory_moment_integral(double t, double s, int n, int m,
                                   const ModelParams& params,
                                   const RadialQuadratureOptions& opts) {
  check_sn(s, n);
  if (m < 0 || m > 2)
    throw std::invalid_argument("oscillatory_moment_integral: m must be 0, 1 or 2");
  if (!(t > 0.0))
    throw std::invalid_argument("oscillatory_moment_integral: t must be > 0");

  const double power = 2.0 * s + n - 1.0 + 4.0 * m;
  const double eta_max =
      std::pow(std::log(1.0 / opts.tail_threshold) / (2.0 * params.mu), 0.25);
  const double t34 = std::pow(t, 0.75);
  const double t14 = std::pow(t, 0.25);
  auto integrand = [&](double eta) {
    const double c = std::cos(eta * t34 + 0.5 * eta * eta * eta * t14);
    const double w = power == 0.0 ? 1.0 : std::pow(eta, power);
    const double e2 = eta * eta;
    return w * c * c * std::exp(-2.0 * params.mu * e2 * e2);
  };
  const auto breaks = oscillation_breakpoints(
      0.0, eta_max, [&](double eta) { return t34 + 1.5 * eta * eta * t14; },
      opts.max_panels / 2);
  return integrate_gk15(integrand, 0.0, eta_max, opts.rel_tol, 0.0, breaks,
                        opts.max_panels)
      .value;
}

double oscillatory_correction_integral(double t, double s, int n,
                                       const ModelParams& params,
                                       const RadialQuadratureOptions& opts) {
  check_sn(s, n);
  if (!(t > 0.0))
    throw std::invalid_argument("oscillatory_correction_integral: t must be > 0");
  const double power = 2.0 * s + n - 1.0;
  const double eta_max =
      std::pow(std::log(1.0 / opts.tail_threshold) / (2.0 * params.mu), 0.25);
  const double t34 = std::pow(t, 0.75);
  const double t14 = std::pow(t, 0.25);
  auto integrand = [&](double eta) {
    const double w = power == 0.0 ? 1.0 : std::pow(eta, power);
    const double e2 = eta * eta;
    return w * std::cos(2.0 * eta * t34 + eta * e2 * t14) *
           std::exp(-2.0 * params.mu * e2 * e2);
  };
  const auto breaks = oscillation_breakpoints(
      0.0, eta_max,
      [&](double eta) { return 2.0 * t34 + 3.0 * eta * eta * t14; },
      opts.max_panels / 2);
  // The integral itself tends to zero; the meaningful scale for the absolute
  // tolerance is the non-oscillatory moment it corrects.
  const double scale = 2.0 * gamma_limit(s, n, 0, params);
  return integrate_gk15(integrand, 0.0, eta_max, opts.rel_tol,
                        opts.rel_tol * scale, breaks, opts.max_panels)
      .value;
}

double reference_rate_Dn(double t, int n) {
  if (n < 1) throw std::invalid_argument("reference_rate_Dn: n must be >= 1");
  if (n == 1) {
    if (!(t > 0.0)) throw std::invalid_argument("reference_rate_Dn: t must be > 0");
    return std::sqrt(t);
  }
  if (n == 2) {
    if (!(t > 1.0))
      throw std::invalid_argument("reference_rate_Dn: n = 2 requires t > 1");
    return std::sqrt(std::log(t));
  }
  if (!(t > 0.0)) throw std::invalid_argument("reference_rate_Dn: t must be > 0");
  return std::pow(t, -(n - 2.0) / 8.0);
}

double reference_rate_Bns(double t, int n, double s) {
  if (s == 0.0) return reference_rate_Dn(t, n);
  if (s >= 1.0) {
    if (!(t > 0.0)) throw std::invalid_argument("reference_rate_Bns: t must be > 0");
    return std::pow(t, -(2.0 * s + n - 2.0) / 8.0);
  }
  throw std::invalid_argument("reference_rate_Bns: s in (0,1) is not defined");
}

}  // namespace bqsim
