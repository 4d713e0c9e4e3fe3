#include <doctest.h>

#include <cmath>

#include "bqsim/config.hpp"
#include "bqsim/symbols.hpp"

using namespace bqsim;

TEST_CASE("cutoff partition of unity") {
  const ZoneCutoffs zones;
  CHECK(cutoffs(0.0, zones).chi_int == 1.0);
  CHECK(cutoffs(0.0, zones).chi_ext == 0.0);
  const auto far = cutoffs(3.0 * zones.n0, zones);
  CHECK(far.chi_ext == 1.0);
  CHECK(far.chi_int == 0.0);
  CHECK(far.chi_bdd == 0.0);

  for (double r : linear_spaced(0.0, 10.0, 500)) {
    const auto c = cutoffs(r, zones);
    CHECK(std::abs(c.chi_int + c.chi_bdd + c.chi_ext - 1.0) <= 1e-12);
    CHECK(c.chi_int >= 0.0);
    CHECK(c.chi_int <= 1.0);
    CHECK(c.chi_bdd >= -1e-15);
    CHECK(c.chi_bdd <= 1.0);
    CHECK(c.chi_ext >= 0.0);
    CHECK(c.chi_ext <= 1.0);
  }

  // support edges
  CHECK(cutoffs(zones.eps0 / 2.0, zones).chi_int == 1.0);
  CHECK(cutoffs(zones.eps0 * 1.0001, zones).chi_int == 0.0);
  CHECK(cutoffs(zones.n0 * 0.9999, zones).chi_ext == 0.0);
  CHECK(cutoffs(2.0 * zones.n0, zones).chi_ext == 1.0);
}

TEST_CASE("error-kernel ratios vanish at r = 0 and stay below the fitted max") {
  const ModelParams mu(0.5);
  const auto ts = log_spaced(1.0, 1e4, 13);  // includes t = 100 exactly
  const auto rs = linear_spaced(0.0, 0.5, 21);
  const auto report = verify_error_kernels(mu, ts, rs);
  CHECK(report.finite);
  CHECK(report.c == 0.25);

  for (const auto& row : report.rows) {
    if (row.r == 0.0) {
      CHECK(row.ratio_k1 == 0.0);
      CHECK(row.ratio_k0 == 0.0);
      CHECK(row.ratio_refined == 0.0);
    }
    CHECK(row.ratio_k1 <= report.c1);
    CHECK(row.ratio_k0 + row.ratio_refined <= report.c2);
  }

  // the specific sample point (t, r) = (100, 0.05) obeys the fitted constant
  const double decay = std::exp(-report.c * std::pow(0.05, 4) * 100.0);
  const double ratio =
      std::abs(kernel_K1_hat(100.0, 0.05, mu) - profile_G1_hat(100.0, 0.05, mu)) /
      decay;
  CHECK(std::isfinite(ratio));
  CHECK(ratio <= report.c1 * (1.0 + 1e-12));

  CHECK_THROWS_AS(
      verify_error_kernels(mu, ts, std::vector<double>{0.9}),
      std::invalid_argument);
}
