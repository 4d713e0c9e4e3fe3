#include "bqsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace bqsim {

namespace {

// Gauss-Kronrod 15(7) nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a,
                                double b, double rel_tol, double abs_tol,
                                std::span<const double> breakpoints,
                                std::size_t max_panels) {
  if (!(b > a)) throw std::invalid_argument("integrate_gk15: requires b > a");

  auto cmp = [](const Panel& p, const Panel& q) { return p.error < q.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp);

  QuadratureResult result{};
  double total = 0.0, total_err = 0.0;
  double lo = a;
  auto push_panel = [&](double pa, double pb) {
    Panel p = evaluate_panel(f, pa, pb);
    result.evaluations += 15;
    total += p.value;
    total_err += p.error;
    queue.push(p);
  };
  for (double bp : breakpoints) {
    if (bp <= lo || bp >= b) continue;
    push_panel(lo, bp);
    lo = bp;
  }
  push_panel(lo, b);

  while (queue.size() < max_panels) {
    const double target = std::max(abs_tol, rel_tol * std::abs(total));
    if (total_err <= target) break;
    Panel worst = queue.top();
    queue.pop();
    total -= worst.value;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval narrowed to rounding
      total += worst.value;
      total_err += worst.error;
      break;
    }
    push_panel(worst.a, mid);
    push_panel(mid, worst.b);
  }

  result.value = total;
  result.error_estimate = total_err;
  result.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
  return result;
}

std::vector<double> oscillation_breakpoints(
    double a, double b, const std::function<double(double)>& phase_derivative,
    std::size_t max_points) {
  std::vector<double> points;
  if (!(b > a)) return points;
  const double quarter = 0.5 * std::numbers::pi;
  double x = a;
  while (points.size() < max_points) {
    const double dphi = std::abs(phase_derivative(x));
    double step = dphi > 0.0 ? quarter / dphi : (b - a);
    step = std::min(step, b - a);
    if (step <= 0.0 || !std::isfinite(step)) break;
    x += step;
    if (x >= b) break;
    points.push_back(x);
  }
  return points;
}

}  // namespace bqsim
