#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "bqsim/config.hpp"
#include "bqsim/linear.hpp"
#include "bqsim/mode_ode_reference.hpp"
#include "bqsim/norms.hpp"
#include "bqsim/oracle.hpp"

using namespace bqsim;

namespace {
constexpr double kPi = std::numbers::pi;

Field gaussian(const GridSpec& grid, double amp, double width,
               double shift = 0.0) {
  return make_physical(grid, [=](const std::array<double, 3>& x) {
    double q = (x[0] - shift) * (x[0] - shift);
    for (int d = 1; d < 3; ++d) q += x[d] * x[d];
    return amp * std::exp(-q / (width * width));
  });
}
}  // namespace

TEST_CASE("evolution at t = 0 returns the data") {
  GridSpec grid(1, 128, 20.0);
  const ModelParams mu(0.5);
  Field v0 = gaussian(grid, 1.0, 1.5);
  Field v1 = gaussian(grid, 0.3, 2.0, 1.0);
  LinearSolution sol(v0, v1, mu);

  const Field evolved_field = to_physical(sol.evolve(0.0));
  const auto evolved = evolved_field.physical();
  const auto original = v0.physical();
  double max_err = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i)
    max_err = std::max(max_err, std::abs(evolved[i] - original[i]));
  CHECK(max_err <= 1e-12);

  const Field dt0_field = to_physical(sol.evolve_time_derivative(0.0));
  const auto dt0 = dt0_field.physical();
  const auto v1_phys = v1.physical();
  max_err = 0.0;
  for (std::size_t i = 0; i < v1_phys.size(); ++i)
    max_err = std::max(max_err, std::abs(dt0[i] - v1_phys[i]));
  CHECK(max_err <= 1e-12);
}

TEST_CASE("single-mode evolution matches the adaptive ODE reference") {
  const double L = 5.0;
  GridSpec grid(1, 64, L);
  const ModelParams mu(0.5);
  Field v0 = Field::zeros(grid, Representation::physical);
  Field v1 = make_physical(grid, [L](const std::array<double, 3>& x) {
    return std::cos(kPi * x[0] / L);
  });
  LinearSolution sol(v0, v1, mu);

  const double r = kPi / L;
  for (double t : {0.5, 2.0, 8.0}) {
    const Field evolved = sol.evolve(t);
    // the +-1 modes carry coefficient L * K1(t, r)
    const auto coeffs = evolved.spectral();
    const auto reference = mode_ode_reference(t, r, mu, 0.0, 1.0);
    const double expected = L * reference[0];
    CHECK(std::abs(coeffs[1].real() - expected) <=
          1e-9 * std::max(std::abs(expected), 1e-12));
  }
}

TEST_CASE("every lattice mode matches the ODE reference (small grid)") {
  GridSpec grid(1, 64, 10.0);
  const ModelParams mu(0.5);
  const Field delta = grid_delta(grid);
  const Field zero = Field::zeros(grid, Representation::physical);
  LinearSolution sol(zero, delta, mu);
  const Field evolved = sol.evolve(1.0);
  const auto coeffs = evolved.spectral();
  const Field delta_hat = to_spectral(delta);
  const auto data = delta_hat.spectral();
  double max_rel = 0.0;
  for_each_mode(grid, [&](std::size_t flat, double r, bool) {
    const auto ref = mode_ode_reference(1.0, r, mu, 0.0, data[flat].real());
    max_rel = std::max(max_rel, std::abs(coeffs[flat].real() - ref[0]) /
                                    (std::abs(ref[0]) + 1e-12));
  });
  CHECK(max_rel <= 1e-9);
}

TEST_CASE("time derivative agrees with centered differences") {
  GridSpec grid(1, 128, 20.0);
  const ModelParams mu(0.3);
  LinearSolution sol(gaussian(grid, 1.0, 1.5), gaussian(grid, -0.4, 2.0), mu);

  const double t = 1.7;
  auto diff_norm = [&](double h) {
    const Field plus_f = sol.evolve(t + h);
    const Field minus_f = sol.evolve(t - h);
    const Field deriv_f = sol.evolve_time_derivative(t);
    const auto plus = plus_f.spectral();
    const auto minus = minus_f.spectral();
    const auto deriv = deriv_f.spectral();
    double acc = 0.0;
    for (std::size_t i = 0; i < plus.size(); ++i)
      acc += std::norm((plus[i] - minus[i]) / (2.0 * h) - deriv[i]);
    return std::sqrt(acc);
  };
  const double e1 = diff_norm(1e-2);
  const double e2 = diff_norm(5e-3);
  CHECK(e2 <= e1 / 3.0);  // O(h^2)
}

TEST_CASE("zero-mode law is exact") {
  GridSpec grid(1, 128, 20.0);
  const ModelParams mu(0.5);
  LinearSolution sol(gaussian(grid, 0.7, 1.5), gaussian(grid, 0.2, 2.5), mu);
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    const Field v = sol.evolve(t);
    const auto zero = v.spectral()[0];
    const auto expected = sol.v0_hat()[0] + t * sol.v1_hat()[0];
    CHECK(std::abs(zero - expected) == 0.0);
  }
}

TEST_CASE("evolution is linear in the data") {
  GridSpec grid(1, 64, 10.0);
  const ModelParams mu(0.5);
  Field a0 = gaussian(grid, 1.0, 1.0), a1 = gaussian(grid, 0.5, 2.0);
  Field b0 = gaussian(grid, -0.3, 1.7, 2.0), b1 = gaussian(grid, 0.8, 1.2, -1.0);

  const double alpha = 1.3, beta = -0.7;
  Field c0 = Field::zeros(grid, Representation::physical);
  Field c1 = Field::zeros(grid, Representation::physical);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    c0.physical_data()[i] = alpha * a0.physical()[i] + beta * b0.physical()[i];
    c1.physical_data()[i] = alpha * a1.physical()[i] + beta * b1.physical()[i];
  }
  LinearSolution sa(a0, a1, mu), sb(b0, b1, mu), sc(c0, c1, mu);
  const double t = 3.0;
  const Field fa = sa.evolve(t), fb = sb.evolve(t), fc = sc.evolve(t);
  const auto va = fa.spectral();
  const auto vb = fb.spectral();
  const auto vc = fc.spectral();
  double max_rel = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < vc.size(); ++i) scale = std::max(scale, std::abs(vc[i]));
  for (std::size_t i = 0; i < vc.size(); ++i)
    max_rel = std::max(max_rel,
                       std::abs(vc[i] - (alpha * va[i] + beta * vb[i])) / scale);
  CHECK(max_rel <= 1e-12);
}

TEST_CASE("profiles: structure and degenerate cases") {
  GridSpec grid(1, 256, 30.0);
  const ModelParams mu(0.5);

  // odd v1 has P = 0, so the first profile vanishes
  Field odd = make_physical(grid, [](const std::array<double, 3>& x) {
    return x[0] * std::exp(-x[0] * x[0]);
  });
  LinearSolution sol_odd(Field::zeros(grid, Representation::physical), odd, mu);
  CHECK(std::abs(sol_odd.moment_p_v1()) <= 1e-12);
  const Field p1_field = sol_odd.profile_v1(5.0);
  const auto p1 = p1_field.spectral();
  for (const auto& c : p1) CHECK(std::abs(c) <= 1e-12);

  // gaussian v1: zero mode of the profile is t * P_{v1}
  Field g = gaussian(grid, 1.0, 2.0);
  LinearSolution sol(Field::zeros(grid, Representation::physical), g, mu);
  const double t = 7.0;
  const Field p1g = sol.profile_v1(t);
  CHECK(p1g.spectral()[0].real() ==
        doctest::Approx(t * sol.moment_p_v1()).epsilon(1e-12));

  // v0 = 0, v1 even with zero mean and M = 0: second profile vanishes
  Field even_zero_mean = make_physical(grid, [](const std::array<double, 3>& x) {
    return (x[0] * x[0] - 0.5) * std::exp(-x[0] * x[0]);
  });
  LinearSolution sol2(Field::zeros(grid, Representation::physical), even_zero_mean,
                      mu);
  CHECK(std::abs(sol2.moment_p_v1()) <= 1e-10);
  CHECK(std::abs(sol2.moment_m_v1()[0]) <= 1e-10);
  const Field p2_field = sol2.profile_v2(3.0);
  const auto p2 = p2_field.spectral();
  double max_abs = 0.0;
  for (const auto& c : p2) max_abs = std::max(max_abs, std::abs(c));
  CHECK(max_abs <= 1e-9);

  // zero mode of the second profile is P_{v0}
  LinearSolution sol3(gaussian(grid, 0.6, 1.5), gaussian(grid, 1.0, 2.0, 1.0), mu);
  const Field p2g = sol3.profile_v2(4.0);
  CHECK(p2g.spectral()[0].real() ==
        doctest::Approx(sol3.moment_p_v0()).epsilon(1e-12));

  // shifted v1 (M != 0): profile_v2 stays conjugate-symmetric thanks to the
  // Nyquist zeroing of the odd term
  CHECK_NOTHROW(to_physical(sol3.profile_v2(4.0)));
}

TEST_CASE("error series basics") {
  GridSpec grid(1, 128, 20.0);
  const ModelParams mu(0.5);
  const Field zero = Field::zeros(grid, Representation::physical);
  LinearSolution trivial(zero, zero, mu);
  const auto times = log_spaced(1.0, 10.0, 5);
  const auto series = trivial.error_series(0.0, times, ProfileSubtraction::v1);
  for (double v : series.values) CHECK(v == 0.0);

  LinearSolution sol(gaussian(grid, 0.4, 1.5), gaussian(grid, 1.0, 2.0), mu);
  const auto e1 = sol.error_series(1.0, times, ProfileSubtraction::v1);
  const auto e12 = sol.error_series(1.0, times, ProfileSubtraction::v1_plus_v2);
  CHECK(e1.size() == times.size());
  CHECK(e12.size() == times.size());
  CHECK_THROWS_AS(sol.error_series(-1.0, times, ProfileSubtraction::v1),
                  std::invalid_argument);
}

TEST_CASE("fft norm path agrees with the radial oracle for gaussian data") {
  // central cross-check between the two independent norm routes
  GridSpec grid(1, 1024, 200.0);
  const ModelParams mu(0.5);
  const RadialGaussianData data{1.0, 2.0};
  Field v1 = gaussian(grid, 1.0, 2.0);
  LinearSolution sol(Field::zeros(grid, Representation::physical), v1, mu);
  for (double t : {30.0, 60.0}) {
    const double fft_norm = sobolev_norm(sol.evolve(t), 0.0);
    const double radial =
        linear_solution_norm_radial(0.0, 1, t, mu, RadialGaussianData{0.0, 1.0}, data);
    CHECK(std::abs(fft_norm - radial) <= 0.01 * radial);
  }
}
