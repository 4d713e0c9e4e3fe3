#pragma once

#include "bqsim/symbols.hpp"

namespace bqsim {

/// Radial frequency-space symbols whose whole-space Sobolev norms the
/// semi-analytic oracle can evaluate without any grid.
enum class RadialSymbol {
  G0,       // cos(rt + r^3 t/2) e^{-mu r^4 t}
  G1,       // sin(rt + r^3 t/2)/r e^{-mu r^4 t}
  GradG1,   // |xi| G1 = sin(rt + r^3 t/2) e^{-mu r^4 t}
  BilapG0,  // |xi|^4 G0
  K0,       // exact propagator symbols (t large enough that the tail is
  K1,       //   still inside the oscillatory zone)
};

struct RadialQuadratureOptions {
  double rel_tol = 1e-6;
  double tail_threshold = 1e-30;  // integration stops where the envelope drops below this
  std::size_t max_panels = 2'000'000;
};

/// Surface measure of the unit sphere S^{n-1}: 2, 2 pi, 4 pi for n = 1, 2, 3.
double unit_sphere_area(int n);

/// Whole-space homogeneous Sobolev norm of the radial multiplier,
///   ( area(S^{n-1}) (2 pi)^{-n} int_0^inf r^{2s+n-1} |symbol(t,r)|^2 dr )^{1/2},
/// by adaptive quadrature with oscillation-aware panel splitting (panel width
/// at most a quarter period of the phase rt + r^3 t/2). The r -> 0 limit of
/// G1 is evaluated exactly, never as a 1/r^2 singularity.
double multiplier_norm_radial(RadialSymbol symbol, double s, int n, double t,
                              const ModelParams& params,
                              const RadialQuadratureOptions& opts = {});

/// Radial Gaussian data a exp(-|x|^2/w^2), with spectrum
/// a (w sqrt(pi))^n exp(-w^2 r^2 / 4) and zeroth moment a (w sqrt(pi))^n.
struct RadialGaussianData {
  double amplitude = 0.0;
  double width = 1.0;
};
double gaussian_moment_P(const RadialGaussianData& data, int n);

/// Whole-space Hdot^s norm of K0(t)*v0 + K1(t)*v1 for radial Gaussian data.
/// FFT-free route for the linear solution norm (valid once the symbol tail
/// lies inside the oscillatory zone, t >= ~20 for mu = 1/2).
double linear_solution_norm_radial(double s, int n, double t,
                                   const ModelParams& params,
                                   const RadialGaussianData& v0,
                                   const RadialGaussianData& v1,
                                   const RadialQuadratureOptions& opts = {});

/// Same, with the leading profile G1 P_{v1} (and optionally the radial part
/// of the second profile, G0 P_{v0} - (t/8) r^4 G0 P_{v1}) subtracted inside
/// the integrand.
enum class RadialSubtraction { none, leading, leading_plus_second };
double linear_error_norm_radial(double s, int n, double t,
                                const ModelParams& params,
                                const RadialGaussianData& v0,
                                const RadialGaussianData& v1,
                                RadialSubtraction mode,
                                const RadialQuadratureOptions& opts = {});

/// Closed-form large-time limit of the oscillation-averaged moment integral:
///   (1/8) (2 mu)^{-(2s+n+4m)/4} Gamma((2s+n)/4 + m),  m in {0, 1, 2}.
double gamma_limit(double s, int n, int m, const ModelParams& params);

/// The defining oscillatory integral at finite time,
///   A~(t; m) = int_0^inf eta^{2s+n-1+4m} cos^2(eta t^{3/4} + eta^3 t^{1/4}/2)
///              e^{-2 mu eta^4} d eta,
/// which tends to gamma_limit as t grows.
double oscillatory_moment_integral(double t, double s, int n, int m,
                                   const ModelParams& params,
                                   const RadialQuadratureOptions& opts = {});

/// The Riemann-Lebesgue correction term
///   int_0^inf cos(2 eta t^{3/4} + eta^3 t^{1/4}) eta^{2s+n-1} e^{-2 mu eta^4} d eta,
/// which decays as t grows.
double oscillatory_correction_integral(double t, double s, int n,
                                       const ModelParams& params,
                                       const RadialQuadratureOptions& opts = {});

/// Reference rate D_n(t): sqrt(t) for n = 1, sqrt(ln t) for n = 2 (t > 1
/// required), t^{-(n-2)/8} for n >= 3.
double reference_rate_Dn(double t, int n);

/// Reference rate B_{n,s}(t): D_n(t) for s = 0, t^{-(2s+n-2)/8} for s >= 1.
/// Rejects s in (0, 1).
double reference_rate_Bns(double t, int n, double s);

}  // namespace bqsim
