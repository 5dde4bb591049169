// Serial reference vs OpenMP kernel for the Monte-Carlo rank simulation.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <fmt/format.h>

#include "stpaprio/simulation.hpp"

namespace {

using namespace stpaprio;

std::vector<RequirementRecord> make_requirements(int n) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> t(1, 3), c(1, 3), ty(1, 5), g(0, 1);
  std::vector<RequirementRecord> out;
  for (int i = 0; i < n; ++i) {
    FactorAssessment a(static_cast<TimeEffort>(t(rng)), static_cast<CostLevel>(c(rng)),
                       static_cast<MitigationType>(ty(rng)), g(rng));
    out.push_back(RequirementRecord::make(fmt::format("UCA(Ph1)-{}.1.1-RQ1", i + 1), "req", {}, a));
  }
  return out;
}

void BM_SimulateSerial(benchmark::State& state) {
  const auto reqs = make_requirements(static_cast<int>(state.range(0)));
  AnalysisConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_serial(reqs, config));
  state.SetItemsProcessed(state.iterations() * config.iterations);
}

void BM_SimulateParallel(benchmark::State& state) {
  const auto reqs = make_requirements(static_cast<int>(state.range(0)));
  AnalysisConfig config;
  config.workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(reqs, config));
  state.SetItemsProcessed(state.iterations() * config.iterations);
}

}  // namespace

BENCHMARK(BM_SimulateSerial)->Arg(15)->Arg(202)->Arg(432)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateParallel)
    ->ArgsProduct({{15, 202, 432}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
