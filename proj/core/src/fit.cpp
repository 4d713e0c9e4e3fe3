#include "bqsim/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bqsim {

RateFit fit_rate(const NormSeries& series, const FitWindow& window, FitMode mode) {
  if (series.times.size() != series.values.size())
    throw std::invalid_argument("fit_rate: malformed series");
  if (!(window.t_max > window.t_min))
    throw std::invalid_argument("fit_rate: degenerate window");

  std::vector<double> ts, vs;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t < window.t_min || t > window.t_max) continue;
    const double v = series.values[i];
    if (!(v > 0.0))
      throw std::invalid_argument("fit_rate: values in the window must be positive");
    ts.push_back(t);
    vs.push_back(v);
  }
  if (ts.size() < 8)
    throw std::invalid_argument("fit_rate: need at least 8 samples in the window");

  RateFit fit{};
  fit.window = window;
  fit.mode = mode;

  if (mode == FitMode::power_law) {
    const std::size_t m = ts.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sx += std::log(ts[i]);
      sy += std::log(vs[i]);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double dx = std::log(ts[i]) - mx;
      const double dy = std::log(vs[i]) - my;
      sxx += dx * dx;
      sxy += dx * dy;
      syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_rate: window collapses in log t");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp((sxy * sxy) / (sxx * syy), 0.0, 1.0);
    return fit;
  }

  // log_growth: fit value^2 / ln t to a constant.
  std::vector<double> c(ts.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 1.0))
      throw std::invalid_argument("fit_rate: log_growth needs t > 1");
    c[i] = vs[i] * vs[i] / std::log(ts[i]);
    mean += c[i];
  }
  mean /= c.size();
  const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
  double var = 0.0;
  for (double ci : c) var += (ci - mean) * (ci - mean);
  var /= c.size();
  fit.intercept = mean;
  fit.slope = mean != 0.0 ? (*hi - *lo) / mean : 0.0;  // relative drift diagnostic
  fit.r_squared =
      mean != 0.0 ? std::clamp(1.0 - var / (mean * mean), 0.0, 1.0) : 0.0;
  return fit;
}

}  // namespace bqsim
