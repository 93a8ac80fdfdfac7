#include "hapsim/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace hapsim {

int associate(std::span<const double> p_rx_dbm) {
  if (p_rx_dbm.empty()) {
    throw std::invalid_argument("associate: need at least one candidate link");
  }
  int best = 0;
  for (int i = 1; i < static_cast<int>(p_rx_dbm.size()); ++i) {
    if (p_rx_dbm[static_cast<std::size_t>(i)] > p_rx_dbm[static_cast<std::size_t>(best)]) {
      best = i;
    }
  }
  return best;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_cdf: empty sample set");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  std::vector<CdfPoint> cdf;
  cdf.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double fraction = static_cast<double>(i + 1) / n;
    if (!cdf.empty() && cdf.back().p_rx_dbm == samples[i]) {
      cdf.back().fraction = fraction;  // duplicates keep the highest fraction
    } else {
      cdf.push_back({samples[i], fraction});
    }
  }
  return cdf;
}

double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) {
    throw std::invalid_argument("sorted_quantile: empty sample set");
  }
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const auto rank = static_cast<std::size_t>(
      std::max<long>(0, static_cast<long>(std::ceil(q * static_cast<double>(sorted.size()))) - 1));
  return sorted[std::min(rank, sorted.size() - 1)];
}

double cdf_quantile(const std::vector<CdfPoint>& cdf, double q) {
  for (const auto& point : cdf) {
    if (point.fraction >= q) {
      return point.p_rx_dbm;
    }
  }
  return cdf.back().p_rx_dbm;
}

namespace {

struct UserOutcome {
  double p_rx_dbm;
  int serving;
  double elevation_deg;
  bool is_los;
};

UserOutcome evaluate_user(const CoverageConfig& config, const GeoPoint& user,
                          const std::vector<HapsNode>& fleet, long user_index,
                          ChannelDiagnostics* diagnostics) {
  UserOutcome best{-std::numeric_limits<double>::infinity(), 0, 0.0, true};
  for (std::size_t j = 0; j < fleet.size(); ++j) {
    const HapsNode& haps = fleet[j];
    const double elevation = elevation_of(user, haps);
    const double dist = slant_range(elevation, haps.altitude_m);
    auto rng = SubstreamRng::keyed(
        config.seed, {kChannelStream, static_cast<std::uint64_t>(user_index),
                      static_cast<std::uint64_t>(j)});
    const LinkDraw draw =
        total_path_loss(config.profile, config.freq_ghz, elevation, dist, rng,
                        config.force_los, diagnostics);
    const double p = received_power(haps.eirp_dbm, config.terminal.rx_gain_dbi,
                                    draw.total_pl_db);
    if (p > best.p_rx_dbm) {
      best = {p, static_cast<int>(j), elevation, draw.is_los};
    }
  }
  return best;
}

}  // namespace

CoverageResult run_coverage(const CoverageConfig& config) {
  if (config.n_users < 1) {
    throw std::invalid_argument("run_coverage: n_users must be >= 1");
  }
  if (config.haps_count < 1 && !config.haps_positions.has_value()) {
    throw std::invalid_argument("run_coverage: haps_count must be >= 1");
  }

  const std::vector<GeoPoint> positions =
      config.haps_positions.has_value() ? *config.haps_positions
                                        : place_haps(config.region, config.haps_count);
  std::vector<HapsNode> fleet;
  fleet.reserve(positions.size());
  for (const GeoPoint& p : positions) {
    fleet.push_back(HapsNode{p, config.haps_altitude_m, config.eirp_dbm, config.band});
  }

  const std::vector<GeoPoint> users =
      sample_users(config.region, config.n_users, config.seed);

  const auto n = static_cast<std::size_t>(config.n_users);
  std::vector<UserOutcome> outcomes(n);
  ChannelDiagnostics diagnostics;

  // Outcomes are written into per-user slots, so the result is identical for
  // any thread count.
  unsigned threads = config.n_threads > 0
                         ? static_cast<unsigned>(config.n_threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      outcomes[i] = evaluate_user(config, users[i], fleet, static_cast<long>(i),
                                  &diagnostics);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) {
          outcomes[i] = evaluate_user(config, users[i], fleet,
                                      static_cast<long>(i), &diagnostics);
        }
      });
    }
    for (auto& worker : pool) {
      worker.join();
    }
  }

  std::vector<double> powers(n);
  long below = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    powers[i] = outcomes[i].p_rx_dbm;
    sum += powers[i];
    if (!meets_sensitivity(powers[i], config.terminal.sensitivity_dbm)) {
      ++below;
    }
  }

  CoverageResult result;
  result.n_users = config.n_users;
  result.low_elevation_clamps =
      diagnostics.low_elevation_clamps.load(std::memory_order_relaxed);
  result.below_sensitivity_fraction =
      static_cast<double>(below) / static_cast<double>(n);
  result.mean_p_rx_dbm = sum / static_cast<double>(n);

  if (config.keep_per_user) {
    const double noise =
        noise_power(config.terminal.bandwidth_hz, config.terminal.noise_figure_db);
    std::vector<LinkBudgetResult> detail(n);
    for (std::size_t i = 0; i < n; ++i) {
      const UserOutcome& o = outcomes[i];
      detail[i] = LinkBudgetResult{
          o.p_rx_dbm,
          snr(o.p_rx_dbm, noise),
          meets_sensitivity(o.p_rx_dbm, config.terminal.sensitivity_dbm),
          o.serving,
          o.elevation_deg,
          o.is_los,
      };
    }
    result.per_user = std::move(detail);
  }

  std::sort(powers.begin(), powers.end());
  result.median_p_rx_dbm = sorted_quantile(powers, 0.5);
  result.p5_p_rx_dbm = sorted_quantile(powers, 0.05);
  result.cdf = empirical_cdf(std::move(powers));
  return result;
}

}  // namespace hapsim
