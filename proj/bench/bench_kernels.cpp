// Serial reference against the OpenMP kernels.
//
//   ./build/bench/chipfire_bench --benchmark_filter=Enumerate

#include <benchmark/benchmark.h>

#include "chipfire/enumeration.hpp"
#include "chipfire/montecarlo.hpp"

using namespace chipfire;

namespace {

const EnumerationBudget kBudget{10, 200'000'000};

void BM_EnumerateSerial(benchmark::State& state) {
    const StarParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_all_serial(p, kBudget));
}

void BM_EnumerateParallel(benchmark::State& state) {
    const StarParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const EnumerationOptions options{kBudget, static_cast<int>(state.range(2))};
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_all(p, options));
}

void BM_VolminSerial(benchmark::State& state) {
    const StarParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_all_serial(p, kBudget, MoveFilter::VolatilityMinimizing));
}

void BM_VolminParallel(benchmark::State& state) {
    const StarParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const EnumerationOptions options{kBudget, static_cast<int>(state.range(2))};
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_all(p, options, MoveFilter::VolatilityMinimizing));
}

void BM_MontecarloSerial(benchmark::State& state) {
    const StarParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(run_montecarlo_serial(p, 2000, 1));
    state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_MontecarloParallel(benchmark::State& state) {
    const StarParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(run_montecarlo(p, 2000, 1, static_cast<int>(state.range(2))));
    state.SetItemsProcessed(state.iterations() * 2000);
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Args({2, 3})->Args({2, 4})->Args({3, 3})->Args({5, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)
    ->ArgsProduct({{2}, {4}, {1, 2, 4}})
    ->ArgsProduct({{3}, {3}, {1, 2, 4}})
    ->ArgsProduct({{5}, {2}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VolminSerial)->Args({3, 3})->Args({2, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VolminParallel)->ArgsProduct({{3}, {3}, {1, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MontecarloSerial)->Args({3, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MontecarloParallel)->ArgsProduct({{3}, {3}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
