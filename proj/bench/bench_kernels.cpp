// Serial reference vs OpenMP paths for the two hot loops.

#include <benchmark/benchmark.h>

#include "hawkes/parallel.hpp"
#include "hawkes/surface.hpp"

using namespace hawkes;

namespace {

const ReplicaPlan kPlan{make_kernel({{0.0, 1.0, 0.5}, {1.0, 2.0, -3.0}}), 1.0, 1000.0, 1, 0, 64};

void BM_ReplicaCountsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(replica_counts_serial(kPlan));
}

void BM_ReplicaCountsParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(replica_counts(kPlan, threads));
}

void BM_TabulateSerial(benchmark::State& state) {
  const LogMgfSurface s = delayed_surface(1.0, 0.5, 1.0);
  const OptimBox box = default_box(s);
  for (auto _ : state) benchmark::DoNotOptimize(tabulate_serial(s, box, 64));
}

void BM_TabulateParallel(benchmark::State& state) {
  const LogMgfSurface s = delayed_surface(1.0, 0.5, 1.0);
  const OptimBox box = default_box(s);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tabulate(s, box, 64, threads));
}

}  // namespace

BENCHMARK(BM_ReplicaCountsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicaCountsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TabulateSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TabulateParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
