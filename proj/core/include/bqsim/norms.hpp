#pragma once

#include <array>
#include <limits>

#include "bqsim/field.hpp"

namespace bqsim {

/// Homogeneous Sobolev norm of order s >= 0,
///   ( (2pi)^{-dim} sum_k |xi_k|^{2s} |fhat(xi_k)|^2 dxi )^{1/2},
/// with dxi the frequency cell volume. s = 0 gives the L2 norm.
/// Rejects s < 0. Transforms internally if `f` is physical.
double sobolev_norm(const Field& f, double s);

/// Grid-quadrature Lebesgue norm, (sum_j |f(x_j)|^q dx^dim)^{1/q};
/// q = infinity returns max |f|. Rejects q < 1.
double lebesgue_norm(const Field& f, double q);
inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// Ratio of the largest |f| on the box boundary faces to the global max |f|.
/// Used to validate that fields are effectively compactly supported inside
/// the box (and, after evolution, that nothing has reached the box edge).
double boundary_tail_ratio(const Field& f);

/// Zeroth moment P_f = sum_j f(x_j) dx^dim (equals fhat(0)).
/// Warns on stderr when the boundary tail exceeds 1e-10 of the max;
/// under strict mode the warning escalates to an error.
double moment_P(const Field& f, bool strict = false);

/// First moment M_f = sum_j x_j f(x_j) dx^dim, component-wise.
std::array<double, 3> moment_M(const Field& f, bool strict = false);

}  // namespace bqsim
