#include <benchmark/benchmark.h>

#include "rtctl/erlang.hpp"
#include "rtctl/experiment.hpp"
#include "rtctl/fuzzy.hpp"
#include "rtctl/rng.hpp"
#include "rtctl/sim_engine.hpp"

using namespace rtctl;

static void BM_CalendarPushPop(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  sim::RngStream rng(7, 0);
  std::vector<double> times(n);
  for (auto& t : times) t = rng.exponential(1.0);
  for (auto _ : state) {
    sim::EventCalendar cal;
    for (double t : times) cal.push(sim::SimEvent{t, sim::EventKind::Arrival, std::nullopt});
    while (!cal.empty()) cal.pop();
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_CalendarPushPop)->Arg(1 << 10)->Arg(1 << 16);

static void BM_Exponential(benchmark::State& state) {
  sim::RngStream rng(11, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rng.exponential(60.0));
}
BENCHMARK(BM_Exponential);

static void BM_FuzzyOutput(benchmark::State& state) {
  control::FuzzyConfig cfg;
  cfg.defuzzifier = state.range(0) == 0 ? control::Defuzzifier::CenterAverage : control::Defuzzifier::Centroid;
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(control::normalized_output(cfg, x));
    x = x >= 1.0 ? -1.0 : x + 0.001;
  }
}
BENCHMARK(BM_FuzzyOutput)->Arg(0)->Arg(1);

static void BM_RunExperiment(benchmark::State& state) {
  harness::ExperimentConfig cfg;
  cfg.controller = state.range(0) == 0 ? harness::ControllerKind::Prop : harness::ControllerKind::Fuzzy;
  for (auto _ : state) benchmark::DoNotOptimize(harness::run_experiment(cfg).summary.mean_response);
}
BENCHMARK(BM_RunExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_FixedPool(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(harness::simulate_fixed_pool(plant::WorkloadConfig{0.2, 60.0}, 320, 100'000, 3, 0).mean_wait);
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_FixedPool)->Unit(benchmark::kMillisecond);

static void BM_ErlangC(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(harness::erlang_c_wait(5.0, 1.0 / 60.0, 320));
}
BENCHMARK(BM_ErlangC);

BENCHMARK_MAIN();
