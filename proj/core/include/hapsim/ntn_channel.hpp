#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>

#include "hapsim/rng.hpp"

namespace hapsim {

/// Propagation environment of the ground users under the platform footprint.
enum class ChannelScenario { DenseUrban, Urban, SuburbanRural };

const char* to_string(ChannelScenario scenario);
ChannelScenario scenario_from_string(const std::string& name);

/// Elevation-binned table, bins at 10..90 degrees in 10-degree steps.
inline constexpr int kElevationBins = 9;
using ElevationTable = std::array<double, kElevationBins>;

/// Per-scenario, per-band channel parameters. LoS probability rises with
/// elevation, NLoS clutter loss falls with it; both are linearly
/// interpolated between bins and clamped to the 10-degree entry below that.
struct ChannelProfile {
  ElevationTable los_prob{};
  double shadow_sigma_los_db = 0.0;
  double shadow_sigma_nlos_db = 0.0;
  ElevationTable clutter_nlos_db{};
  double zenith_atmos_db = 0.0;
  double min_elevation_deg = 5.0;

  /// Throws ConfigError (prefixed with `field`) on any invariant violation:
  /// probabilities outside [0,1] or decreasing, negative losses, increasing
  /// clutter, non-finite entries.
  void validate(const std::string& field) const;
};

/// One stochastic realization of a user-HAPS link, with the additive
/// components recorded alongside the total.
struct LinkDraw {
  bool is_los = true;
  double shadow_db = 0.0;
  double fspl_db = 0.0;
  double clutter_db = 0.0;
  double atmos_db = 0.0;
  double total_pl_db = 0.0;
};

/// Shared counters for conditions that are clamped rather than rejected.
struct ChannelDiagnostics {
  std::atomic<std::uint64_t> low_elevation_clamps{0};
};

/// Table lookup with linear interpolation between the surrounding bins;
/// exact at bin nodes, clamped below 10 and above 90 degrees.
double interpolate_elevation_table(const ElevationTable& table, double elevation_deg);

double los_probability(const ChannelProfile& profile, double elevation_deg);

/// True with probability p. p outside [0,1] is invalid.
bool sample_los(double p, SubstreamRng& rng);

/// Free-space path loss in dB: 32.45 + 20 log10(f_GHz) + 20 log10(d_m).
double fspl(double freq_ghz, double dist_m);

/// 0 dB on LoS links, interpolated NLoS table value otherwise.
double clutter_loss(const ChannelProfile& profile, double elevation_deg, bool is_los);

/// Zenith loss stretched by the slant path, zenith_db / sin(elevation).
/// Below `min_elevation_deg` the link is evaluated at the mask angle and the
/// diagnostic counter (when provided) is incremented.
double atmospheric_loss(double zenith_atmos_db, double elevation_deg,
                        double min_elevation_deg = 5.0,
                        ChannelDiagnostics* diagnostics = nullptr);

/// Zero-mean Gaussian in dB with standard deviation sigma_db.
double sample_shadow(double sigma_db, SubstreamRng& rng);

/// Full large-scale loss of one link: draws the LoS state (unless forced,
/// in which case no LoS uniform is consumed), then shadowing with the
/// state-matched sigma, and sums FSPL + shadow + clutter + atmospheric.
LinkDraw total_path_loss(const ChannelProfile& profile, double freq_ghz,
                         double elevation_deg, double dist_m, SubstreamRng& rng,
                         std::optional<bool> force_los = {},
                         ChannelDiagnostics* diagnostics = nullptr);

}  // namespace hapsim
