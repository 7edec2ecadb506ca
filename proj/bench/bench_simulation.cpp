#include <benchmark/benchmark.h>

#include "invlindley/simulation.hpp"

using namespace invlindley;

static void BM_ScenarioSerial(benchmark::State& state) {
    const auto cfg = make_scenario(1, 2, static_cast<std::size_t>(state.range(0)),
                                   static_cast<std::size_t>(state.range(0)), 2000, 1);
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario_serial(cfg));
    state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_ScenarioSerial)->Arg(15)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_ScenarioParallel(benchmark::State& state) {
    const auto cfg = make_scenario(1, 2, 50, 50, 2000, 1);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg, threads));
    state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_ScenarioParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
