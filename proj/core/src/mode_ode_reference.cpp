#include "bqsim/mode_ode_reference.hpp"

#include <boost/numeric/odeint.hpp>

namespace bqsim {

namespace {
using State = std::array<double, 2>;
}

std::array<double, 2> mode_ode_reference(double t, double r,
                                         const ModelParams& params, double w0,
                                         double w1, double rel_tol) {
  if (t < 0.0) throw std::invalid_argument("mode_ode_reference: t must be >= 0");
  State y{w0, w1};
  if (t == 0.0) return y;

  const double r2 = r * r;
  const double r4 = r2 * r2;
  const double damping = 2.0 * params.mu * r4;
  const double stiffness = r2 + r4;
  auto rhs = [damping, stiffness](const State& y_, State& dydt, double) {
    dydt[0] = y_[1];
    dydt[1] = -damping * y_[1] - stiffness * y_[0];
  };

  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_dopri5<State>;
  // Absolute floor far below any value the acceptance comparisons care about;
  // the control is effectively relative.
  auto stepper = ode::make_controlled<Stepper>(1e-260, rel_tol);
  double dt0 = 0.1;
  if (damping > 0.0) dt0 = std::min(dt0, 1.0 / damping);
  if (stiffness > 0.0) dt0 = std::min(dt0, 1.0 / std::sqrt(stiffness));
  ode::integrate_adaptive(stepper, rhs, y, 0.0, t, dt0);
  return y;
}

}  // namespace bqsim
