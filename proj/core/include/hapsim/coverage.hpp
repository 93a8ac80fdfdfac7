#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hapsim/geometry.hpp"
#include "hapsim/link_budget.hpp"
#include "hapsim/ntn_channel.hpp"

namespace hapsim {

/// Full description of one received-power experiment: drop users over the
/// region, evaluate every user-HAPS link, associate each user with its best
/// server, aggregate the CDF.
struct CoverageConfig {
  Region region{};
  int haps_count = 1;
  double haps_altitude_m = 20000.0;
  Band band = Band::S;
  ChannelScenario scenario = ChannelScenario::SuburbanRural;
  long n_users = 100000;
  std::uint64_t seed = 1;
  TerminalModel terminal{};
  ChannelProfile profile{};
  double eirp_dbm = 0.0;
  double freq_ghz = 2.0;
  std::optional<bool> force_los{};  // pin the LoS state for oracle runs
  bool keep_per_user = false;
  int n_threads = 0;  // 0 = hardware concurrency
  /// Optional explicit platform layout; overrides haps_count placement.
  std::optional<std::vector<GeoPoint>> haps_positions{};
};

struct CdfPoint {
  double p_rx_dbm = 0.0;
  double fraction = 0.0;
};

struct CoverageResult {
  std::vector<CdfPoint> cdf;
  double below_sensitivity_fraction = 0.0;
  double median_p_rx_dbm = 0.0;
  double mean_p_rx_dbm = 0.0;
  double p5_p_rx_dbm = 0.0;
  long n_users = 0;
  std::uint64_t low_elevation_clamps = 0;
  std::optional<std::vector<LinkBudgetResult>> per_user;
};

/// Index of the strongest entry; ties break toward the lowest index.
int associate(std::span<const double> p_rx_dbm);

/// Step CDF of the samples: sorted ascending, fraction (i+1)/n, duplicate
/// values collapsed onto their highest fraction. Empty input is invalid.
std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);

/// q-quantile of an ascending-sorted sample (nearest-rank, q in [0,1]).
double sorted_quantile(std::span<const double> sorted, double q);

/// Interpolation-free CDF lookup on a CoverageResult.
double cdf_quantile(const std::vector<CdfPoint>& cdf, double q);

CoverageResult run_coverage(const CoverageConfig& config);

}  // namespace hapsim
