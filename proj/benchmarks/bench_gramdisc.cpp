#include <benchmark/benchmark.h>

#include "gramdisc/gramdisc.hpp"

using namespace gramdisc;

static void BM_GramPoint(benchmark::State& state) {
  long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram_point(n));
    ++n;
  }
}
BENCHMARK(BM_GramPoint)->Arg(1000)->Arg(1000000);

static void BM_SectionSum(benchmark::State& state) {
  const auto terms = static_cast<std::size_t>(state.range(0));
  const SectionContext ctx(terms);
  const auto a = ParameterVector::sparse(terms, 0.41, {{1, 1.0}, {2, 1.0}, {4, 1.0}, {6, 1.0}, {12, 1.0}});
  const double t = 2.0 * static_cast<double>(terms) + 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_section(t, a, ctx));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SectionSum)->Arg(1000)->Arg(100000)->Arg(230000)->Unit(benchmark::kMicrosecond);

static void BM_HardyZ(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hardy_z(t));
}
BENCHMARK(BM_HardyZ)->Arg(1000)->Arg(1000000);

static void BM_ClassifyRange(benchmark::State& state) {
  const long lo = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(classify_range(lo, lo + 9999, 1));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_ClassifyRange)->Arg(0)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_Discriminant(benchmark::State& state) {
  const GramDiscriminant d(state.range(0));
  const auto a = ParameterVector::constant(d.dimension(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(d.evaluate(a));
}
BENCHMARK(BM_Discriminant)->Arg(90)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
