#include <benchmark/benchmark.h>

#include <cmath>

#include "reccost/reccost.hpp"

using namespace reccost;

namespace {

FunctionHandle cosh_log() { return lift_to_log(make_family(FamilySpec::cosh_lambda(1.0))); }

void BM_CanonicalCost(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_cost(PositiveRatio(x)).value());
    x = x < 4.0 ? x + 1e-3 : 0.5;
  }
}
BENCHMARK(BM_CanonicalCost);

void BM_SupDefect(benchmark::State& state) {
  const auto h = cosh_log();
  const double step = 6.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sup_defect(h, 3.0, step).epsilon);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SupDefect)->RangeMultiplier(2)->Range(60, 480)->Complexity(benchmark::oNSquared);

void BM_EstimateKappa(benchmark::State& state) {
  const auto h = cosh_log();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_kappa(h).kappa);
}
BENCHMARK(BM_EstimateKappa);

void BM_Classify(benchmark::State& state) {
  const auto h = make_family(FamilySpec::cos_k(0.7));
  for (auto _ : state) benchmark::DoNotOptimize(classify(h).residual);
}
BENCHMARK(BM_Classify);

void BM_Certify(benchmark::State& state) {
  const auto h = perturb(make_family(FamilySpec::noisy_cosh(1.0, 0.0, 1.0, 0)),
                         {PerturbMode::poly4, 1e-3, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(certify(h, 1.0, 0.02).delta);
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

void BM_Distance(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance(PositiveRatio(1.0), PositiveRatio(1e4), tol).value);
  }
}
BENCHMARK(BM_Distance)->DenseRange(6, 12, 3);

void BM_ChebyshevSequence(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(chebyshev_sequence(std::cosh(1.0), static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_ChebyshevSequence)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
