#include <benchmark/benchmark.h>

#include "hapsim/config.hpp"
#include "hapsim/scenario.hpp"

namespace {

void BM_RunTimeline(benchmark::State& state) {
  auto sc = hapsim::default_config().scenario;
  sc.n_sites = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto result = hapsim::run_timeline(sc);
    benchmark::DoNotOptimize(result.ticks.back().coverage_ratio);
  }
}
BENCHMARK(BM_RunTimeline)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
