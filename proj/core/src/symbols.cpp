#include "bqsim/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bqsim {

namespace {

// sin(x)/x and sinh(x)/x with the exact limit 1 at x = 0. Both library
// functions are accurate for all nonzero arguments, so no series is needed.
inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }
inline double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }

struct ModeConstants {
  double r2;    // r^2
  double r4;    // r^4
  double c;     // mu r^4, half the damping
  double w2;    // r^2 + r^4, product of roots
  double disc;  // c^2 - w2
};

inline ModeConstants mode_constants(double r, const ModelParams& params) {
  const double r2 = r * r;
  const double r4 = r2 * r2;
  const double c = params.mu * r4;
  const double w2 = r2 + r4;
  return {r2, r4, c, w2, c * c - w2};
}

}  // namespace

double degeneracy_threshold(double r) { return 1e-6 * (1.0 + r * r * r * r); }

CharRoots char_roots(double r, const ModelParams& params) {
  if (r < 0.0) throw std::invalid_argument("char_roots: r must be >= 0");
  const auto mc = mode_constants(r, params);
  CharRoots roots{};
  roots.discriminant = mc.disc;

  if (r == 0.0) {
    roots.lambda_plus = roots.lambda_minus = 0.0;
    roots.regime = RootRegime::degenerate;
    return roots;
  }

  if (mc.disc < 0.0) {
    const double li = std::sqrt(-mc.disc);
    roots.lambda_plus = {-mc.c, li};
    roots.lambda_minus = {-mc.c, -li};
  } else {
    // Larger-magnitude root from the additive branch, the other via the
    // product of roots r^2 + r^4 to avoid cancellation.
    const double d = std::sqrt(mc.disc);
    const double lam_minus = -(mc.c + d);
    roots.lambda_minus = lam_minus;
    roots.lambda_plus = mc.w2 / lam_minus;
  }

  const double separation = std::abs(roots.lambda_plus - roots.lambda_minus);
  if (separation < degeneracy_threshold(r))
    roots.regime = RootRegime::degenerate;
  else
    roots.regime = (mc.disc < 0.0) ? RootRegime::oscillatory : RootRegime::overdamped;
  return roots;
}

SmallFreqExpansion small_freq_expansion(double r, const ModelParams& params,
                                        int order, bool strict, double eps0) {
  if (order != 1 && order != 3 && order != 5)
    throw std::invalid_argument("small_freq_expansion: order must be 1, 3 or 5");
  if (r < 0.0) throw std::invalid_argument("small_freq_expansion: r must be >= 0");
  if (strict && r > eps0)
    throw std::invalid_argument("small_freq_expansion: r outside the interior zone");
  const double r2 = r * r;
  const double r4 = r2 * r2;
  double im = r;
  if (order >= 3) im += 0.5 * r * r2;
  if (order >= 5) im -= 0.125 * r * r4;
  return {-params.mu * r4, im};
}

double expansion_remainder(double r, const ModelParams& params, int order) {
  if (order != 1 && order != 3 && order != 5)
    throw std::invalid_argument("expansion_remainder: order must be 1, 3 or 5");
  if (r < 0.0) throw std::invalid_argument("expansion_remainder: r must be >= 0");
  const double r2 = r * r;
  const double r4 = r2 * r2;
  const double r6 = r4 * r2;
  const double mu2 = params.mu * params.mu;
  // lambda_I = r sqrt(1 + y), y = r^2 - mu^2 r^6. With q the truncated
  // expansion of sqrt(1+y), the remainder is r (1 + y - q^2)/(sqrt(1+y) + q);
  // the numerator 1 + y - q^2 is expanded exactly so nothing cancels.
  const double y = r2 - mu2 * r6;
  double q, num;
  switch (order) {
    case 1:
      q = 1.0;
      num = r2 * (1.0 - mu2 * r4);
      break;
    case 3:
      q = 1.0 + 0.5 * r2;
      num = -r4 * (0.25 + mu2 * r2);
      break;
    default:  // order 5
      q = 1.0 + 0.5 * r2 - 0.125 * r4;
      num = r6 * (0.125 - mu2) - r4 * r4 / 64.0;
      break;
  }
  return r * num / (std::sqrt(1.0 + y) + q);
}

PropagatorPair propagator_pair(double t, double r, const ModelParams& params) {
  if (t < 0.0) throw std::invalid_argument("propagator_pair: t must be >= 0");
  const auto mc = mode_constants(r, params);
  const double m = -mc.c * t;
  if (mc.disc < 0.0) {
    const double x = std::sqrt(-mc.disc) * t;
    const double em = std::exp(m);
    const double sc = sinc(x);
    return {em * (std::cos(x) + mc.c * t * sc), t * em * sc};
  }
  const double d = std::sqrt(mc.disc);
  const double dt = d * t;
  if (dt < 0.5) {
    // Confluent divided-difference forms, exact limits (1 - m) e^m and t e^m
    // at dt = 0.
    const double em = std::exp(m);
    const double sh = sinhc(dt);
    return {em * (std::cosh(dt) - m * sh), t * em * sh};
  }
  // lambda_+ from the product of roots: m + dt cancels catastrophically.
  const double a = -(mc.w2 / (mc.c + d)) * t;  // lambda_+ t
  const double b = -(mc.c + d) * t;            // lambda_- t
  const double ea = std::exp(a);
  const double eb = std::exp(b);
  return {(a * eb - b * ea) / (a - b), t * (ea - eb) / (a - b)};
}

double kernel_K0_hat(double t, double r, const ModelParams& params) {
  return propagator_pair(t, r, params).k0;
}

double kernel_K1_hat(double t, double r, const ModelParams& params) {
  return propagator_pair(t, r, params).k1;
}

double kernel_K0_hat_dt(double t, double r, const ModelParams& params) {
  const auto mc = mode_constants(r, params);
  return -mc.w2 * kernel_K1_hat(t, r, params);
}

double kernel_K1_hat_dt(double t, double r, const ModelParams& params) {
  const auto mc = mode_constants(r, params);
  return kernel_K0_hat(t, r, params) - 2.0 * mc.c * kernel_K1_hat(t, r, params);
}

double profile_G0_hat(double t, double r, const ModelParams& params) {
  if (t < 0.0 || r < 0.0)
    throw std::invalid_argument("profile_G0_hat: t, r must be >= 0");
  const double r2 = r * r;
  const double theta = r * t * (1.0 + 0.5 * r2);
  return std::cos(theta) * std::exp(-params.mu * r2 * r2 * t);
}

double profile_G1_hat(double t, double r, const ModelParams& params) {
  if (t < 0.0 || r < 0.0)
    throw std::invalid_argument("profile_G1_hat: t, r must be >= 0");
  const double r2 = r * r;
  const double theta = r * t * (1.0 + 0.5 * r2);
  // sin(theta)/r = t (1 + r^2/2) sinc(theta): finite limit t at r = 0.
  return t * (1.0 + 0.5 * r2) * sinc(theta) * std::exp(-params.mu * r2 * r2 * t);
}

StepCoefficients step_coefficients(double t, double r, const ModelParams& params) {
  if (t < 0.0) throw std::invalid_argument("step_coefficients: t must be >= 0");
  const auto mc = mode_constants(r, params);
  StepCoefficients sc{};

  if (t == 0.0) {
    sc.k0 = 1.0;
    sc.dk1 = 1.0;
    return sc;
  }

  const double rho = (2.0 * mc.c + std::sqrt(mc.w2)) * t;  // bounds |lambda| t
  if (rho <= 0.5) {
    // Power series of K1(s) = sum a_k s^k from the mode recurrence
    //   a_{j+2} = -(2c (j+1) a_{j+1} + w2 a_j) / ((j+2)(j+1)),
    // summed together with its derivative and first two moments. The closed
    // forms cancel catastrophically in this regime; the series does not.
    double a_j = 0.0;   // a_0
    double a_j1 = 1.0;  // a_1
    double k1 = t;
    double dk1 = 1.0;
    double ik1 = 0.5 * t * t;
    double jk1 = t * t * t / 3.0;
    double pw = t;  // t^{j+1}
    for (int j = 0; j < 48; ++j) {
      const double a_next =
          -(2.0 * mc.c * (j + 1) * a_j1 + mc.w2 * a_j) / ((j + 2.0) * (j + 1.0));
      a_j = a_j1;
      a_j1 = a_next;
      const double pw_prev = pw;  // t^{j+1}
      pw *= t;                    // t^{j+2}
      const int k = j + 2;
      const double term = a_next * pw;
      k1 += term;
      dk1 += k * a_next * pw_prev;
      ik1 += term * t / (k + 1.0);
      jk1 += term * t * t / (k + 2.0);
      if (std::abs(term) <= 1e-18 * std::abs(k1) + 1e-300) break;
    }
    sc.k1 = k1;
    sc.dk1 = dk1;
    sc.k0 = dk1 + 2.0 * mc.c * k1;  // from dK1/dt = K0 - 2c K1
    sc.dk0 = -mc.w2 * k1;
    sc.int_k1 = ik1;
    sc.int_s_k1 = jk1;
    return sc;
  }

  sc.k0 = kernel_K0_hat(t, r, params);
  sc.k1 = kernel_K1_hat(t, r, params);
  sc.dk0 = -mc.w2 * sc.k1;
  sc.dk1 = sc.k0 - 2.0 * mc.c * sc.k1;
  if (mc.disc >= 0.0) {
    // expm1-based forms stay accurate when the slow root is small; the slow
    // root itself comes from the product of roots to avoid cancellation.
    const double d = std::sqrt(mc.disc);
    const double a = -(mc.w2 / (mc.c + d)) * t;
    const double b = -(mc.c + d) * t;
    sc.int_k1 = (b * std::expm1(a) - a * std::expm1(b)) / ((a - b) * mc.w2);
    const double k1_minus_tk0 =
        t * ((1.0 + b) * std::exp(a) - (1.0 + a) * std::exp(b)) / (a - b);
    sc.int_s_k1 = (k1_minus_tk0 + 2.0 * mc.c * sc.int_k1) / mc.w2;
  } else {
    sc.int_k1 = (1.0 - sc.k0) / mc.w2;
    sc.int_s_k1 = (sc.k1 - t * sc.k0 + 2.0 * mc.c * sc.int_k1) / mc.w2;
  }
  return sc;
}

namespace {

// C-infinity ramp: 0 for x <= 0, 1 for x >= 1, exp(-1/x) mollifier profile.
inline double smooth_ramp(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

}  // namespace

CutoffValues cutoffs(double r, const ZoneCutoffs& zones) {
  if (r < 0.0) throw std::invalid_argument("cutoffs: r must be >= 0");
  const double chi_int =
      1.0 - smooth_ramp((r - (zones.eps0 - zones.int_width)) / zones.int_width);
  const double chi_ext = smooth_ramp((r - zones.n0) / zones.ext_width);
  return {chi_int, 1.0 - chi_int - chi_ext, chi_ext};
}

ErrorKernelReport verify_error_kernels(const ModelParams& params,
                                       std::span<const double> t_grid,
                                       std::span<const double> r_grid,
                                       const ZoneCutoffs& zones) {
  ErrorKernelReport report{};
  report.c = 0.5 * params.mu;
  report.finite = true;
  report.rows.reserve(t_grid.size() * r_grid.size());

  for (double t : t_grid) {
    for (double r : r_grid) {
      if (r > zones.eps0)
        throw std::invalid_argument("verify_error_kernels: r outside [0, eps0]");
      const double r4 = r * r * r * r;
      const double k0 = kernel_K0_hat(t, r, params);
      const double k1 = kernel_K1_hat(t, r, params);
      const double g0 = profile_G0_hat(t, r, params);
      const double g1 = profile_G1_hat(t, r, params);
      const double decay = std::exp(-report.c * r4 * t);

      ErrorKernelRow row{t, r, 0.0, 0.0, 0.0};
      row.ratio_k1 = std::abs(k1 - g1) / decay;
      if (r > 0.0) {
        row.ratio_k0 = std::abs(k0 - g0) / (r * decay);
        row.ratio_refined = std::abs(k1 - g1 + 0.125 * t * r4 * g0) / (r * decay);
      }
      if (!std::isfinite(row.ratio_k1) || !std::isfinite(row.ratio_k0) ||
          !std::isfinite(row.ratio_refined))
        report.finite = false;
      report.c1 = std::max(report.c1, row.ratio_k1);
      report.c2 = std::max(report.c2, row.ratio_k0 + row.ratio_refined);
      report.max_ratio = std::max({report.max_ratio, row.ratio_k1, row.ratio_k0,
                                   row.ratio_refined});
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace bqsim
