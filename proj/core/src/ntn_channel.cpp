#include "hapsim/ntn_channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hapsim/errors.hpp"

namespace hapsim {

const char* to_string(ChannelScenario scenario) {
  switch (scenario) {
    case ChannelScenario::DenseUrban: return "dense-urban";
    case ChannelScenario::Urban: return "urban";
    case ChannelScenario::SuburbanRural: return "suburban-rural";
  }
  return "?";
}

ChannelScenario scenario_from_string(const std::string& name) {
  if (name == "dense-urban") return ChannelScenario::DenseUrban;
  if (name == "urban") return ChannelScenario::Urban;
  if (name == "suburban-rural") return ChannelScenario::SuburbanRural;
  throw ConfigError("scenario", "unknown channel scenario '" + name +
                                    "' (expected dense-urban, urban or suburban-rural)");
}

void ChannelProfile::validate(const std::string& field) const {
  for (int i = 0; i < kElevationBins; ++i) {
    const double p = los_prob[static_cast<std::size_t>(i)];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw ConfigError(field + ".los_prob[" + std::to_string(i) + "]",
                        "probability must be in [0, 1]");
    }
    if (i > 0 && p < los_prob[static_cast<std::size_t>(i - 1)]) {
      throw ConfigError(field + ".los_prob[" + std::to_string(i) + "]",
                        "LoS probability must be non-decreasing in elevation");
    }
    const double c = clutter_nlos_db[static_cast<std::size_t>(i)];
    if (!std::isfinite(c) || c < 0.0) {
      throw ConfigError(field + ".clutter_nlos_db[" + std::to_string(i) + "]",
                        "clutter loss must be >= 0 dB");
    }
    if (i > 0 && c > clutter_nlos_db[static_cast<std::size_t>(i - 1)]) {
      throw ConfigError(field + ".clutter_nlos_db[" + std::to_string(i) + "]",
                        "clutter loss must be non-increasing in elevation");
    }
  }
  if (!std::isfinite(shadow_sigma_los_db) || shadow_sigma_los_db < 0.0) {
    throw ConfigError(field + ".shadow_sigma_los_db", "sigma must be >= 0");
  }
  if (!std::isfinite(shadow_sigma_nlos_db) || shadow_sigma_nlos_db < 0.0) {
    throw ConfigError(field + ".shadow_sigma_nlos_db", "sigma must be >= 0");
  }
  if (!std::isfinite(zenith_atmos_db) || zenith_atmos_db < 0.0) {
    throw ConfigError(field + ".zenith_atmos_db", "loss must be >= 0 dB");
  }
  if (!std::isfinite(min_elevation_deg) || min_elevation_deg <= 0.0 ||
      min_elevation_deg > 90.0) {
    throw ConfigError(field + ".min_elevation_deg", "mask angle must be in (0, 90]");
  }
}

double interpolate_elevation_table(const ElevationTable& table, double elevation_deg) {
  if (elevation_deg <= 10.0) {
    return table.front();
  }
  if (elevation_deg >= 90.0) {
    return table.back();
  }
  const double pos = (elevation_deg - 10.0) / 10.0;
  const int lo = static_cast<int>(pos);
  const double t = pos - lo;
  return table[static_cast<std::size_t>(lo)] * (1.0 - t) +
         table[static_cast<std::size_t>(lo + 1)] * t;
}

double los_probability(const ChannelProfile& profile, double elevation_deg) {
  if (elevation_deg < 0.0 || elevation_deg > 90.0) {
    throw std::invalid_argument("los_probability: elevation must be in [0, 90]");
  }
  return interpolate_elevation_table(profile.los_prob, elevation_deg);
}

bool sample_los(double p, SubstreamRng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("sample_los: p must be in [0, 1]");
  }
  return rng.next_double() < p;
}

double fspl(double freq_ghz, double dist_m) {
  if (freq_ghz <= 0.0 || dist_m <= 0.0) {
    throw std::invalid_argument("fspl: frequency and distance must be > 0");
  }
  return 32.45 + 20.0 * std::log10(freq_ghz) + 20.0 * std::log10(dist_m);
}

double clutter_loss(const ChannelProfile& profile, double elevation_deg, bool is_los) {
  if (is_los) {
    return 0.0;
  }
  return interpolate_elevation_table(profile.clutter_nlos_db, elevation_deg);
}

double atmospheric_loss(double zenith_atmos_db, double elevation_deg,
                        double min_elevation_deg, ChannelDiagnostics* diagnostics) {
  double effective = elevation_deg;
  if (effective < min_elevation_deg) {
    effective = min_elevation_deg;
    if (diagnostics != nullptr) {
      diagnostics->low_elevation_clamps.fetch_add(1, std::memory_order_relaxed);
    }
  }
  return zenith_atmos_db / std::sin(effective * std::numbers::pi / 180.0);
}

double sample_shadow(double sigma_db, SubstreamRng& rng) {
  if (sigma_db < 0.0) {
    throw std::invalid_argument("sample_shadow: sigma must be >= 0");
  }
  // Draw even for sigma == 0 so the substream advances identically.
  return sigma_db * rng.next_gaussian();
}

LinkDraw total_path_loss(const ChannelProfile& profile, double freq_ghz,
                         double elevation_deg, double dist_m, SubstreamRng& rng,
                         std::optional<bool> force_los,
                         ChannelDiagnostics* diagnostics) {
  LinkDraw draw;
  if (force_los.has_value()) {
    draw.is_los = *force_los;
  } else {
    draw.is_los = sample_los(los_probability(profile, elevation_deg), rng);
  }
  const double sigma = draw.is_los ? profile.shadow_sigma_los_db
                                   : profile.shadow_sigma_nlos_db;
  draw.shadow_db = sample_shadow(sigma, rng);
  draw.fspl_db = fspl(freq_ghz, dist_m);
  draw.clutter_db = clutter_loss(profile, elevation_deg, draw.is_los);
  draw.atmos_db = atmospheric_loss(profile.zenith_atmos_db, elevation_deg,
                                   profile.min_elevation_deg, diagnostics);
  draw.total_pl_db = draw.fspl_db + draw.shadow_db + draw.clutter_db + draw.atmos_db;
  return draw;
}

}  // namespace hapsim
