#include <benchmark/benchmark.h>

#include "hapsim/config.hpp"
#include "hapsim/ntn_channel.hpp"

namespace {

void BM_TotalPathLoss(benchmark::State& state) {
  const auto cfg = hapsim::default_config();
  const auto profile = hapsim::resolve_profile(
      cfg.channel, hapsim::ChannelScenario::DenseUrban, hapsim::Band::S);
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto rng = hapsim::SubstreamRng::keyed(1, {hapsim::kChannelStream, i++, 0});
    const auto draw =
        hapsim::total_path_loss(profile, 2.0, 25.0, 120000.0, rng);
    benchmark::DoNotOptimize(draw.total_pl_db);
  }
}
BENCHMARK(BM_TotalPathLoss);

void BM_ElevationSlant(benchmark::State& state) {
  const hapsim::HapsNode haps{{0.0, 0.0}, 20000.0, 86.0, hapsim::Band::S};
  double g = 1000.0;
  for (auto _ : state) {
    const double e = hapsim::elevation_of(hapsim::GeoPoint{g, g}, haps);
    benchmark::DoNotOptimize(hapsim::slant_range(e, haps.altitude_m));
    g = g < 200000.0 ? g + 997.0 : 1000.0;
  }
}
BENCHMARK(BM_ElevationSlant);

}  // namespace
