#include <benchmark/benchmark.h>

#include "bqsim/field.hpp"
#include "bqsim/nonlinear.hpp"
#include "bqsim/norms.hpp"
#include "bqsim/oracle.hpp"
#include "bqsim/symbols.hpp"

namespace {

using namespace bqsim;

void BM_PropagatorPair(benchmark::State& state) {
  const ModelParams mu(0.5);
  double r = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagator_pair(1.0, r, mu));
    r = r < 100.0 ? r * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_PropagatorPair);

void BM_StepCoefficients(benchmark::State& state) {
  const ModelParams mu(0.5);
  double r = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_coefficients(0.1, r, mu));
    r = r < 100.0 ? r * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_StepCoefficients);

void BM_FftRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridSpec grid(2, n, 40.0);
  Field f = make_physical(grid, [](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1]));
  });
  for (auto _ : state) {
    Field back = to_physical(to_spectral(f));
    benchmark::DoNotOptimize(back.physical().data());
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_FftRoundTrip)->Arg(128)->Arg(512);

void BM_RadialNorm(benchmark::State& state) {
  const ModelParams mu(0.5);
  const double t = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(multiplier_norm_radial(RadialSymbol::G0, 1.0, 2, t, mu));
}
BENCHMARK(BM_RadialNorm)->Arg(2)->Arg(4)->Arg(6);

void BM_DuhamelStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridSpec grid(2, n, 40.0);
  const ModelParams mu(0.5);
  NonlinearitySpec nl;
  nl.p = 5.0;
  Field u1 = make_physical(grid, [](const std::array<double, 3>& x) {
    return 0.01 * std::exp(-(x[0] * x[0] + x[1] * x[1]) / 4.0);
  });
  SimState s(Field::zeros(grid, Representation::physical), u1, mu, nl);
  DuhamelStepper stepper(grid, mu, 0.05);
  for (auto _ : state) {
    s = stepper.step(s, 1.0);
    benchmark::DoNotOptimize(s.u_hat.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_DuhamelStep)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
