#include <benchmark/benchmark.h>

#include "tailcr/estimators.hpp"
#include "tailcr/montecarlo.hpp"
#include "tailcr/rng.hpp"
#include "tailcr/sampling.hpp"
#include "tailcr/survival.hpp"

namespace {

tailcr::CompetingRisksSample make_sample(std::size_t n) {
  using namespace tailcr;
  const std::vector<SubDistributionSpec> specs = {
      {TailFamily::frechet, 0.1, 1.0, 1.0, 0.7},
      {TailFamily::frechet, 0.25, 1.0, 1.0, 0.3},
  };
  const CensoringSpec censoring{TailFamily::frechet, 0.3, 1.0, 1.0};
  SplitMix64 rng = SplitMix64::for_stream(7, 0);
  const auto lifetimes = sample_competing_risks(specs, n, rng);
  const auto censorings = sample_censoring(censoring, n, rng);
  return make_observed(lifetimes, censorings, 2);
}

void BM_km_survival(benchmark::State& state) {
  const auto sample = make_sample(static_cast<std::size_t>(state.range(0)));
  const auto selector = tailcr::select_censorings();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tailcr::km_survival(sample, selector));
  }
}
BENCHMARK(BM_km_survival)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_gamma_aj(benchmark::State& state) {
  const auto sample = make_sample(static_cast<std::size_t>(state.range(0)));
  const auto thr = tailcr::ThresholdChoice::top_order(sample.size() / 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tailcr::gamma_aj(sample, 1, thr));
  }
}
BENCHMARK(BM_gamma_aj)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_gamma_km(benchmark::State& state) {
  const auto sample = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tailcr::gamma_km(sample, 1, sample.size() / 10));
  }
}
BENCHMARK(BM_gamma_km)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_run_scenario(benchmark::State& state) {
  tailcr::ScenarioConfig config = tailcr::smoke_preset();
  config.n = 500;
  config.n_rep = static_cast<std::size_t>(state.range(0));
  config.kn_grid = {25, 50, 100, 200};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tailcr::run_scenario(config, 1));
  }
}
BENCHMARK(BM_run_scenario)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
