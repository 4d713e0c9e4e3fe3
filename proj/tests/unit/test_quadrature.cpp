#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bqsim/quadrature.hpp"

using namespace bqsim;

TEST_CASE("gk15 integrates polynomials essentially exactly") {
  const auto q = integrate_gk15([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(q.converged);
}

TEST_CASE("gk15 handles oscillatory integrands with breakpoints") {
  const double b = 200.0 * std::numbers::pi;
  // int_0^b sin(x) dx = 1 - cos(b) = 0 for integer periods
  const auto breaks = oscillation_breakpoints(
      0.0, b, [](double) { return 1.0; });
  const auto q = integrate_gk15([](double x) { return std::sin(x); }, 0.0, b,
                                1e-10, 1e-10, breaks);
  CHECK(std::abs(q.value) <= 1e-8);

  // quarter-period spacing
  REQUIRE(breaks.size() > 2);
  CHECK(breaks[1] - breaks[0] == doctest::Approx(std::numbers::pi / 2.0));
}

TEST_CASE("gk15 adapts to a sharp peak") {
  const auto q = integrate_gk15(
      [](double x) { return std::exp(-1000.0 * (x - 0.7) * (x - 0.7)); }, 0.0,
      1.0, 1e-10);
  CHECK(q.value ==
        doctest::Approx(std::sqrt(std::numbers::pi / 1000.0)).epsilon(1e-9));
}

TEST_CASE("gk15 validates its interval") {
  CHECK_THROWS_AS(integrate_gk15([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
}
