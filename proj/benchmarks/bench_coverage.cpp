#include <benchmark/benchmark.h>

#include "hapsim/config.hpp"
#include "hapsim/coverage.hpp"

namespace {

void BM_RunCoverage(benchmark::State& state) {
  auto cfg = hapsim::default_config();
  cfg.coverage.n_users = state.range(0);
  cfg.haps.count = static_cast<int>(state.range(1));
  const auto cov = hapsim::make_coverage_config(cfg);
  for (auto _ : state) {
    const auto result = hapsim::run_coverage(cov);
    benchmark::DoNotOptimize(result.median_p_rx_dbm);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunCoverage)
    ->Args({10000, 1})
    ->Args({10000, 4})
    ->Args({100000, 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace
