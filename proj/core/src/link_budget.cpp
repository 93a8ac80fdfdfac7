#include "hapsim/link_budget.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hapsim/errors.hpp"

namespace hapsim {

const char* to_string(Band band) {
  return band == Band::S ? "s" : "ka";
}

Band band_from_string(const std::string& name) {
  if (name == "s" || name == "S") return Band::S;
  if (name == "ka" || name == "Ka" || name == "KA") return Band::Ka;
  throw ConfigError("band", "unknown band '" + name + "' (expected s or ka)");
}

double dish_gain(double diameter_m, double freq_ghz, double efficiency) {
  if (diameter_m <= 0.0 || freq_ghz <= 0.0 || efficiency <= 0.0 || efficiency > 1.0) {
    throw std::invalid_argument(
        "dish_gain: diameter, frequency and efficiency must be > 0, efficiency <= 1");
  }
  const double k = std::numbers::pi * diameter_m * freq_ghz * 1e9 / kSpeedOfLightMps;
  return 10.0 * std::log10(efficiency * k * k);
}

double received_power(double eirp_dbm, double rx_gain_dbi, double total_pl_db) {
  return eirp_dbm + rx_gain_dbi - total_pl_db;
}

double noise_power(double bandwidth_hz, double noise_figure_db) {
  if (bandwidth_hz <= 0.0) {
    throw std::invalid_argument("noise_power: bandwidth must be > 0");
  }
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double snr(double p_rx_dbm, double noise_dbm) {
  return p_rx_dbm - noise_dbm;
}

bool meets_sensitivity(double p_rx_dbm, double sensitivity_dbm) {
  return p_rx_dbm >= sensitivity_dbm;
}

}  // namespace hapsim
