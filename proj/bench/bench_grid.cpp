#include <benchmark/benchmark.h>

#include <omp.h>

#include "gdiscord/grid_search.hpp"
#include "gdiscord/mc_oracle.hpp"
#include "gdiscord/optimizer.hpp"
#include "gdiscord/states.hpp"

using namespace gdiscord;

namespace {

CovarianceMatrix state_for(int modes) {
  return modes == 2 ? apply_noise(epr(1.0), {NoiseKind::Uncorrelated, 0.4})
                    : apply_noise(ghz(2.0), {NoiseKind::Uncorrelated, 1.0});
}

// args: modes
void BM_GridSerial(benchmark::State& state) {
  const auto V = state_for(static_cast<int>(state.range(0)));
  const auto axes = GridAxes::uniform(8, 5);
  for (auto _ : state) benchmark::DoNotOptimize(grid_search_serial(V, axes, false, 6));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid_size(axes, V.modes(), false)));
}

// args: modes, threads
void BM_GridParallel(benchmark::State& state) {
  const auto V = state_for(static_cast<int>(state.range(0)));
  const auto axes = GridAxes::uniform(8, 5);
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(grid_search_parallel(V, axes, false, 6, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid_size(axes, V.modes(), false)));
}

void BM_MaximizeMi(benchmark::State& state) {
  const auto V = state_for(static_cast<int>(state.range(0)));
  SearchOptions options;
  options.parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(maximize_mi(V, options));
}

void BM_Sample(benchmark::State& state) {
  const auto V = epr(1.0);
  const auto plan = MeasurementPlan::heterodyne(2);
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_outcomes(V, plan, 1 << 18, 1, jobs));
  state.SetItemsProcessed(state.iterations() * (1 << 18));
}

void thread_args(benchmark::internal::Benchmark* b) {
  for (int modes : {2, 3})
    for (int threads = 1; threads <= std::max(4, omp_get_max_threads()); threads *= 2) b->Args({modes, threads});
}

}  // namespace

BENCHMARK(BM_GridSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MaximizeMi)->Args({2, 0})->Args({2, 1})->Args({3, 0})->Args({3, 1})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Sample)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
