#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hapsim/coverage.hpp"
#include "hapsim/scenario.hpp"

namespace hapsim {

/// HAPS fleet parameters shared by coverage and timeline runs.
struct HapsConfig {
  int count = 1;
  double altitude_m = 20000.0;
  double eirp_dbm_s = 86.0;
  double eirp_dbm_ka = 90.0;
};

struct FrequencyConfig {
  double s_ghz = 2.0;
  double ka_ghz = 20.0;
};

/// Raw per-scenario channel tables (S-band values; Ka derives via the extra
/// terms below).
struct ScenarioChannelConfig {
  ElevationTable los_prob{};
  ElevationTable clutter_nlos_db_s{};
  double shadow_sigma_los_db_s = 0.0;
  double shadow_sigma_nlos_db_s = 0.0;
};

struct ChannelConfig {
  double min_elevation_deg = 5.0;
  double zenith_atmos_db_s = 0.07;
  double zenith_atmos_db_ka = 0.5;
  double ka_clutter_extra_db = 10.0;
  double ka_shadow_extra_db = 2.0;
  ScenarioChannelConfig dense_urban{};
  ScenarioChannelConfig urban{};
  ScenarioChannelConfig suburban_rural{};

  const ScenarioChannelConfig& tables_for(ChannelScenario scenario) const;
};

struct TerminalsConfig {
  TerminalModel handheld{};
  TerminalModel vsat{};
};

/// Coverage experiment knobs (the Fig.-style received-power CDF run).
struct CoverageSection {
  long n_users = 100000;
  Band band = Band::S;
  ChannelScenario scenario = ChannelScenario::SuburbanRural;
  std::optional<bool> force_los{};
  bool keep_per_user = false;
  int n_threads = 0;
};

/// The whole run configuration: one JSON document, every field optional and
/// defaulted from the shipped values.
struct RunConfig {
  std::uint64_t seed = 1;
  Region region{};
  HapsConfig haps{};
  FrequencyConfig frequencies{};
  ChannelConfig channel{};
  TerminalsConfig terminals{};
  CoverageSection coverage{};
  ScenarioConfig scenario{};
};

/// Shipped defaults; configs/default.json serializes to exactly this.
RunConfig default_config();

/// Parse `text` as a (possibly partial) JSON override of the defaults and
/// validate. `origin` names the source in diagnostics.
RunConfig parse_config(const std::string& text, const std::string& origin);

/// Read, parse and validate a configuration file.
RunConfig load_config(const std::string& path);

/// Canonical JSON form; load(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Throws ConfigError (with dotted field path) on any invariant violation.
void validate_config(const RunConfig& config);

/// Band- and scenario-resolved channel profile.
ChannelProfile resolve_profile(const ChannelConfig& channel, ChannelScenario scenario,
                               Band band);

/// Terminal for the band; the VSAT rx gain is derived from its dish.
TerminalModel resolve_terminal(const RunConfig& config, Band band);

double eirp_for(const HapsConfig& haps, Band band);
double frequency_for(const FrequencyConfig& frequencies, Band band);

/// Assemble a CoverageConfig from the document (plus any CLI overrides
/// already applied to `config`).
CoverageConfig make_coverage_config(const RunConfig& config);

}  // namespace hapsim
