#pragma once

#include <array>

#include "bqsim/symbols.hpp"

namespace bqsim {

/// Independent high-accuracy reference solution of the per-mode equation
///   w'' + 2 mu r^4 w' + (r^2 + r^4) w = 0,  w(0) = w0, w'(0) = w1,
/// by adaptive embedded Runge-Kutta integration. Shares no code with the
/// closed-form propagator symbols, so it can serve as their oracle.
/// Returns (w(t), w'(t)).
std::array<double, 2> mode_ode_reference(double t, double r,
                                         const ModelParams& params, double w0,
                                         double w1, double rel_tol = 1e-12);

}  // namespace bqsim
