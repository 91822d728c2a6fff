#include <cmath>

#include <benchmark/benchmark.h>

#include "steinbounds/bayes.hpp"
#include "steinbounds/bounds.hpp"
#include "steinbounds/oracle.hpp"
#include "steinbounds/quadrature.hpp"
#include "steinbounds/stein.hpp"

namespace sb = steinbounds;

static void BM_IntegrateGaussian(benchmark::State& state) {
  for (auto _ : state) {
    auto r = sb::integrate([](double x) { return std::exp(-0.5 * x * x); }, -30.0, 30.0, {});
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_IntegrateGaussian);

static void BM_SkewNormalConstruction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sb::Distribution::skew_normal(0, 1, 3).mean());
}
BENCHMARK(BM_SkewNormalConstruction);

static void BM_NumericKernel(benchmark::State& state) {
  const auto d = sb::Distribution::gamma(2.5, 1.0);
  const auto k = sb::stein_kernel(d, {}, sb::KernelMode::ForceNumeric);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k(x));
    x = x > 8 ? 0.1 : x + 0.37;
  }
}
BENCHMARK(BM_NumericKernel);

static void BM_OracleCdf(benchmark::State& state) {
  const auto p1 = sb::Distribution::normal(0, 1);
  const auto p2 = sb::Distribution::skew_normal(0, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sb::oracle_cdf(p1, p2).value);
}
BENCHMARK(BM_OracleCdf)->Unit(benchmark::kMillisecond);

static void BM_OracleQuantile(benchmark::State& state) {
  const auto p1 = sb::Distribution::gamma(2, 1);
  const auto p2 = sb::Distribution::gamma(3, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(sb::oracle_quantile(p1, p2).value);
}
BENCHMARK(BM_OracleQuantile)->Unit(benchmark::kMillisecond);

static void BM_BoundsTheorem(benchmark::State& state) {
  const auto p1 = sb::Distribution::normal(0, 2);
  const auto p2 = sb::Distribution::normal(0.5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sb::bounds_theorem(p1, p2).upper);
}
BENCHMARK(BM_BoundsTheorem)->Unit(benchmark::kMillisecond);

static void BM_BestBoundsMonotone(benchmark::State& state) {
  const auto p1 = sb::Distribution::normal(0, 1);
  const auto p2 = sb::Distribution::skew_normal(0, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sb::best_bounds(p1, p2).lower);
}
BENCHMARK(BM_BestBoundsMonotone)->Unit(benchmark::kMillisecond);

static void BM_PriorImpactNormal(benchmark::State& state) {
  const auto pair = sb::build_posteriors(sb::SamplingModel::normal(1, static_cast<int>(state.range(0)), 0.5),
                                         sb::Prior::normal(0, 1));
  for (auto _ : state) benchmark::DoNotOptimize(sb::prior_impact_bounds(pair).upper);
}
BENCHMARK(BM_PriorImpactNormal)->Arg(4)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
