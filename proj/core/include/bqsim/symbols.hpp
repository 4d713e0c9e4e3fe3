#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bqsim {

/// Model parameters of the dissipative Boussinesq equation
///   u_tt - Lap u + Lap^2 u + 2 mu Lap^2 u_t = Lap f(u),
/// with dissipation coefficient mu in (0,1).
struct ModelParams {
  double mu;
  explicit ModelParams(double mu_value) : mu(mu_value) {
    if (!(mu > 0.0 && mu < 1.0))
      throw std::invalid_argument("ModelParams: mu must lie in (0,1)");
  }
};

enum class RootRegime { oscillatory, degenerate, overdamped };

/// The pair of characteristic roots of lambda^2 + 2 mu r^4 lambda + r^2 + r^4
/// at frequency magnitude r, with discriminant bookkeeping.
struct CharRoots {
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  double discriminant;  // mu^2 r^8 - r^2 - r^4
  RootRegime regime;
};

/// Exact quadratic roots, evaluated cancellation-free: in the overdamped
/// regime the larger-magnitude root comes from the stable branch of the
/// formula and the other from the product of roots r^2 + r^4.
CharRoots char_roots(double r, const ModelParams& params);

/// Root separation threshold below which the roots are treated as confluent:
/// |lambda_+ - lambda_-| < 1e-6 (1 + r^4).
double degeneracy_threshold(double r);

/// Truncated expansion of the roots for small r:
///   lambda_R = -mu r^4,  lambda_I = r + r^3/2 - r^5/8 (+ higher order),
/// with the imaginary part truncated at the requested odd order (1, 3 or 5).
struct SmallFreqExpansion {
  double lambda_re;
  double lambda_im;
};
SmallFreqExpansion small_freq_expansion(double r, const ModelParams& params,
                                        int order, bool strict = false,
                                        double eps0 = 0.5);

/// lambda_I(exact) - lambda_I(order), evaluated through an algebraically
/// exact rearrangement that stays accurate where direct subtraction would be
/// swamped by rounding (the remainder is O(r^{order+2})).
double expansion_remainder(double r, const ModelParams& params, int order);

/// Propagator symbols: solutions of the per-mode equation
///   w'' + 2 mu r^4 w' + (r^2 + r^4) w = 0
/// with data (1,0) for K0 and (0,1) for K1. Continuous across the degenerate
/// circle; confluent limits (1 - lambda t) e^{lambda t} and t e^{lambda t}
/// with lambda = -mu r^4 are reached through divided-difference forms.
double kernel_K0_hat(double t, double r, const ModelParams& params);
double kernel_K1_hat(double t, double r, const ModelParams& params);

/// Both propagators in one evaluation (shared transcendentals).
struct PropagatorPair {
  double k0;
  double k1;
};
PropagatorPair propagator_pair(double t, double r, const ModelParams& params);

/// Time derivatives, from d/dt K0 = -(r^2+r^4) K1 and
/// d/dt K1 = K0 - 2 mu r^4 K1.
double kernel_K0_hat_dt(double t, double r, const ModelParams& params);
double kernel_K1_hat_dt(double t, double r, const ModelParams& params);

/// Diffusion-wave profile symbols
///   G0 = cos(r t + r^3 t / 2) e^{-mu r^4 t},
///   G1 = sin(r t + r^3 t / 2) / r * e^{-mu r^4 t}  (limit t at r = 0).
double profile_G0_hat(double t, double r, const ModelParams& params);
double profile_G1_hat(double t, double r, const ModelParams& params);

/// All per-mode coefficients needed to advance one time step of size t:
/// the propagators, their time derivatives, and the forcing moments
///   int_k1   = int_0^t K1(s) ds        (limit t^2/2 at r = 0),
///   int_s_k1 = int_0^t s K1(s) ds      (limit t^3/3 at r = 0),
/// evaluated in closed form, with a series fallback where the closed forms
/// would cancel.
struct StepCoefficients {
  double k0;
  double k1;
  double dk0;
  double dk1;
  double int_k1;
  double int_s_k1;
};
StepCoefficients step_coefficients(double t, double r, const ModelParams& params);

/// Smooth partition of unity over small/bounded/large frequencies, built from
/// the exp(-1/x) mollifier profile. chi_int is 1 on [0, eps0/2] and 0 beyond
/// eps0; chi_ext is 0 below n0 and 1 beyond 2 n0; chi_bdd = 1 - others.
struct ZoneCutoffs {
  double eps0 = 0.5;
  double n0 = 2.0;
  double int_width = 0.25;  // chi_int transition spans [eps0 - int_width, eps0]
  double ext_width = 2.0;   // chi_ext transition spans [n0, n0 + ext_width]
  static ZoneCutoffs with(double eps0_value, double n0_value) {
    return ZoneCutoffs{eps0_value, n0_value, eps0_value / 2.0, n0_value};
  }
};
struct CutoffValues {
  double chi_int;
  double chi_bdd;
  double chi_ext;
};
CutoffValues cutoffs(double r, const ZoneCutoffs& zones = {});

/// Error-kernel verification: on a (t, r) grid with r inside the interior
/// zone, computes
///   ratio_1 = |K1 - G1|                  / e^{-c r^4 t},
///   ratio_0 = |K0 - G0|                  / (r e^{-c r^4 t}),
///   ratio_r = |K1 - G1 + (t/8) r^4 G0|   / (r e^{-c r^4 t}),
/// with c = mu/2, and reports the fitted constants (grid maxima).
struct ErrorKernelRow {
  double t;
  double r;
  double ratio_k1;       // bound id "est_k1"
  double ratio_k0;       // bound id "est_k0"
  double ratio_refined;  // bound id "est_k1_refined"
};
struct ErrorKernelReport {
  double c;         // decay constant, mu/2
  double c1;        // max ratio_k1
  double c2;        // max (ratio_k0 + ratio_refined)
  double max_ratio; // max over all three ratio families
  bool finite;
  std::vector<ErrorKernelRow> rows;
};
ErrorKernelReport verify_error_kernels(const ModelParams& params,
                                       std::span<const double> t_grid,
                                       std::span<const double> r_grid,
                                       const ZoneCutoffs& zones = {});

}  // namespace bqsim
