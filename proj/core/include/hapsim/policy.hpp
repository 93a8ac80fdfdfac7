#pragma once

#include <string>

namespace hapsim {

/// Primary per-tick action for one GBS site. Exactly one is chosen each tick;
/// energy routing rides along as directives on PolicyDecision.
enum class PolicyAction {
  ServeNormally,
  SleepOffloadHaps,
  OffloadNewArrivals,
  Wake,
  RadioOffServeViaHaps,
  RunOnBess,
  RunOnGenerator,
  RequestEv,
  HapsBackhaul,
  SatelliteFallback,
  Outage,
};

const char* to_string(PolicyAction action);

/// Load thresholds for the pre-disaster (sustainability) policy. Must satisfy
/// rho_low < rho_wake <= rho_high; the gap between sleep and wake is the
/// hysteresis band.
struct PolicyThresholds {
  double rho_low = 0.1;
  double rho_wake = 0.2;
  double rho_high = 0.9;

  void validate(const std::string& field) const;  // throws ConfigError
};

/// Everything a policy looks at for one site on one tick.
struct GbsStatus {
  bool radio_on = true;
  bool grid_ok = true;
  bool backbone_ok = true;
  bool haps_available = false;
  bool satellite_available = false;
  double load = 0.0;  // fraction of capacity, up to 1.5 for overload
  double soc = 1.0;
  double generator_fuel_h = 0.0;
  bool ev_inbound = false;
};

struct PolicyDecision {
  PolicyAction action = PolicyAction::ServeNormally;
  /// Route RES surplus into the BESS this tick (never set while the battery
  /// is being protected under HAPS coverage).
  bool charge_bess_from_res = false;
  /// Ask for a volunteer EV this tick.
  bool request_ev = false;
};

/// Methodology 1 (pre-disaster sustainability): sleep the radio and offload
/// to HAPS under low load, wake on the hysteresis threshold, push new
/// arrivals to HAPS near congestion. Requires grid power.
PolicyDecision decide_predisaster(const GbsStatus& status,
                                  const PolicyThresholds& thresholds);

/// Methodology 2 (in-disaster resiliency), strict priority order:
///   1. grid + backbone            -> serve normally
///   2. grid, backbone cut, HAPS   -> keep radio, backhaul over HAPS
///   3. no grid, HAPS              -> radio off, users on HAPS, battery idle
///   4. no grid, no HAPS, soc high -> run on BESS
///   5. no grid, no HAPS, soc low  -> generator if fueled, request an EV
///   6. no bearer but satellite    -> satellite fallback
///   7. otherwise                  -> outage
PolicyDecision decide_indisaster(const GbsStatus& status, double reserve_soc);

}  // namespace hapsim
