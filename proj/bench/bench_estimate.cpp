// Serial reference vs OpenMP estimator over the same trials.

#include <benchmark/benchmark.h>

#include "crn/simulator.hpp"

namespace {

crn::SimulationConfig config_for(const benchmark::State& state) {
  crn::SimulationConfig config;
  config.realizations = static_cast<std::uint64_t>(state.range(0));
  config.seed = 7;
  return config;
}

void BM_EstimateSerial(benchmark::State& state) {
  const crn::NetworkParams params;
  const auto config = config_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(crn::estimate_serial(params, config, crn::Regime::Dir));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EstimateOpenMP(benchmark::State& state) {
  const crn::NetworkParams params;
  const auto config = config_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(crn::estimate(params, config, crn::Regime::Dir));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrialOmn(benchmark::State& state) {
  const crn::NetworkParams params;
  const crn::SimulationConfig config;
  std::uint64_t k = 0;
  for (auto _ : state) {
    crn::Rng rng = crn::make_stream_rng(3, k++);
    benchmark::DoNotOptimize(crn::run_trial(params, config, crn::Regime::Omn, rng));
  }
}

}  // namespace

BENCHMARK(BM_EstimateSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateOpenMP)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialOmn)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
