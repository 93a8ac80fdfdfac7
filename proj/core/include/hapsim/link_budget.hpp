#pragma once

#include "hapsim/band.hpp"

namespace hapsim {

inline constexpr double kSpeedOfLightMps = 2.998e8;

/// Ground terminal: an S-band handheld (isotropic antenna) or a Ka-band VSAT
/// (parabolic dish whose gain is derived from diameter and efficiency).
struct TerminalModel {
  Band band = Band::S;
  double rx_gain_dbi = 0.0;
  double noise_figure_db = 7.0;
  double bandwidth_hz = 10e6;
  double sensitivity_dbm = -100.0;
  double dish_diameter_m = 0.0;  // Ka only
  double dish_efficiency = 0.6;  // Ka only
};

/// Downlink outcome for one user after best-server association.
struct LinkBudgetResult {
  double p_rx_dbm = 0.0;
  double snr_db = 0.0;
  bool meets_sensitivity = false;
  int serving_haps = 0;
  double elevation_deg = 0.0;
  bool is_los = true;
};

/// Aperture gain of a circular dish: 10 log10(eff * (pi * D * f / c)^2).
double dish_gain(double diameter_m, double freq_ghz, double efficiency);

double received_power(double eirp_dbm, double rx_gain_dbi, double total_pl_db);

/// Thermal noise floor plus noise figure: -174 dBm/Hz + 10 log10(B) + NF.
double noise_power(double bandwidth_hz, double noise_figure_db);

double snr(double p_rx_dbm, double noise_dbm);

bool meets_sensitivity(double p_rx_dbm, double sensitivity_dbm);

}  // namespace hapsim
