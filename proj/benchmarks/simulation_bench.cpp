#include <benchmark/benchmark.h>

#include "hedonica/batch.hpp"
#include "hedonica/engine.hpp"

using namespace hedonica;

namespace {

// A world warmed up for 50 steps, then stepped repeatedly.
void BM_AdvanceStep(benchmark::State& state) {
    SimConfig config;
    config.n_agents = static_cast<int>(state.range(0));
    auto world = make_world(config, {false, false, state.range(1) != 0});
    for (int i = 0; i < 50; ++i) advance_step(world, config, state.range(1) != 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(advance_step(world, config, state.range(1) != 0));
    }
}
BENCHMARK(BM_AdvanceStep)->ArgsProduct({{20, 60}, {0, 1}})->ArgNames({"agents", "checks"});

void BM_SingleRun(benchmark::State& state) {
    SimConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_simulation(config, {state.range(0) != 0, false, true}));
        ++config.seed;
    }
}
BENCHMARK(BM_SingleRun)->Arg(0)->Arg(1)->ArgName("trace")->Unit(benchmark::kMillisecond);

void BM_Experiment(benchmark::State& state) {
    SimConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(config));
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
