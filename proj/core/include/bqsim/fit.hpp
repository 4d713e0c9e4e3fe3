#pragma once

#include "bqsim/series.hpp"

namespace bqsim {

enum class FitMode {
  power_law,   // least-squares slope of log value vs log t
  log_growth,  // fit of value^2 / ln t to a constant
};

struct FitWindow {
  double t_min;
  double t_max;
};

/// Fitted rate diagnostics. In power_law mode, `slope` and `intercept` are
/// the least-squares line of log value vs log t and `r_squared` its
/// coefficient of determination. In log_growth mode, `intercept` is the
/// fitted constant c = mean(value^2 / ln t), `slope` holds the relative drift
/// (max - min)/mean of value^2 / ln t as a slope-equivalent diagnostic, and
/// `r_squared` is the flatness score 1 - (stddev/mean)^2, clamped to [0,1].
struct RateFit {
  double slope;
  double intercept;
  double r_squared;
  FitWindow window;
  FitMode mode;
};

/// Fits the samples of `series` with t in [window.t_min, window.t_max].
/// Requires at least 8 samples in the window, all values positive (and
/// t > 1 in log_growth mode).
RateFit fit_rate(const NormSeries& series, const FitWindow& window, FitMode mode);

}  // namespace bqsim
