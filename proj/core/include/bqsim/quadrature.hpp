#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bqsim {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod 15(7) integration of f over [a, b].
/// `breakpoints` seeds the initial panel set (interior points, ascending);
/// the worst panel is bisected until the summed error estimate drops below
/// max(abs_tol, rel_tol * |integral|) or the panel budget is exhausted.
QuadratureResult integrate_gk15(const std::function<double(double)>& f,
                                double a, double b, double rel_tol = 1e-10,
                                double abs_tol = 0.0,
                                std::span<const double> breakpoints = {},
                                std::size_t max_panels = 2'000'000);

/// Panel edges for integrands oscillating with phase `phase_derivative(r)`:
/// steps of at most a quarter period pi/2 / phase'(r), clipped to
/// [min_step, b - a]. Returned points are interior to (a, b), ascending.
std::vector<double> oscillation_breakpoints(
    double a, double b, const std::function<double(double)>& phase_derivative,
    std::size_t max_points = 4'000'000);

}  // namespace bqsim
