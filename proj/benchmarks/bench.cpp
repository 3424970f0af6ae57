#include <benchmark/benchmark.h>

#include "polydisc/asymptotics.hpp"
#include "polydisc/constructions.hpp"
#include "polydisc/diamgraph.hpp"
#include "polydisc/geometry.hpp"
#include "polydisc/kkt.hpp"
#include "polydisc/optimize.hpp"

using namespace polydisc;

static void BM_LogDiscriminant(benchmark::State& state) {
  const PointConfig z = triwave(static_cast<int>(state.range(0))).z;
  for (auto _ : state) benchmark::DoNotOptimize(log_normalized_discriminant(z));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LogDiscriminant)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

static void BM_Gradient(benchmark::State& state) {
  const PointConfig z = regular_ngon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(objective_gradient(z));
}
BENCHMARK(BM_Gradient)->Arg(12)->Arg(68)->Arg(256);

static void BM_ExtractAndClassify(benchmark::State& state) {
  const PointConfig z = arc_polygon(static_cast<int>(state.range(0))).P;
  for (auto _ : state) benchmark::DoNotOptimize(classify(extract(z)));
}
BENCHMARK(BM_ExtractAndClassify)->Arg(2)->Arg(10)->Arg(50);

static void BM_Verify(benchmark::State& state) {
  const PointConfig z = dodecagon12().config;
  for (auto _ : state) benchmark::DoNotOptimize(verify(z));
}
BENCHMARK(BM_Verify);

static void BM_MaximizeFree(benchmark::State& state) {
  OptimizeOptions o;
  o.starts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(maximize_free(static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_MaximizeFree)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_ArcPolygon(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(arc_polygon(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ArcPolygon)->Arg(10)->Arg(100);

static void BM_RegimeIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(regime_integral(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_RegimeIntegral)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_JRiemann(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(J_riemann(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_JRiemann)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_EnumerateCaterpillars(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_caterpillars(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateCaterpillars)->Arg(8)->Arg(12)->Arg(16);
BENCHMARK_MAIN();
