#include "hapsim/policy.hpp"

#include <stdexcept>

#include "hapsim/errors.hpp"

namespace hapsim {

const char* to_string(PolicyAction action) {
  switch (action) {
    case PolicyAction::ServeNormally: return "serve_normally";
    case PolicyAction::SleepOffloadHaps: return "sleep_offload_haps";
    case PolicyAction::OffloadNewArrivals: return "offload_new_arrivals";
    case PolicyAction::Wake: return "wake";
    case PolicyAction::RadioOffServeViaHaps: return "radio_off_serve_via_haps";
    case PolicyAction::RunOnBess: return "run_on_bess";
    case PolicyAction::RunOnGenerator: return "run_on_generator";
    case PolicyAction::RequestEv: return "request_ev";
    case PolicyAction::HapsBackhaul: return "haps_backhaul";
    case PolicyAction::SatelliteFallback: return "satellite_fallback";
    case PolicyAction::Outage: return "outage";
  }
  return "?";
}

void PolicyThresholds::validate(const std::string& field) const {
  if (!(rho_low < rho_wake && rho_wake <= rho_high)) {
    throw ConfigError(field, "thresholds must satisfy rho_low < rho_wake <= rho_high");
  }
  if (rho_low < 0.0 || rho_high > 1.5) {
    throw ConfigError(field, "thresholds must lie in [0, 1.5]");
  }
}

PolicyDecision decide_predisaster(const GbsStatus& status,
                                  const PolicyThresholds& thresholds) {
  thresholds.validate("policy.thresholds");
  if (!status.grid_ok) {
    throw std::invalid_argument("decide_predisaster: requires grid power");
  }
  PolicyDecision decision;
  decision.charge_bess_from_res = status.soc < 1.0;

  if (!status.radio_on) {
    decision.action = status.load >= thresholds.rho_wake
                          ? PolicyAction::Wake
                          : PolicyAction::SleepOffloadHaps;
    return decision;
  }
  if (status.load < thresholds.rho_low && status.haps_available) {
    decision.action = PolicyAction::SleepOffloadHaps;
  } else if (status.load > thresholds.rho_high && status.haps_available) {
    decision.action = PolicyAction::OffloadNewArrivals;
  } else {
    decision.action = PolicyAction::ServeNormally;
  }
  return decision;
}

PolicyDecision decide_indisaster(const GbsStatus& status, double reserve_soc) {
  PolicyDecision decision;
  decision.charge_bess_from_res = true;

  if (status.grid_ok) {
    if (status.backbone_ok) {
      decision.action = PolicyAction::ServeNormally;
    } else if (status.haps_available) {
      decision.action = PolicyAction::HapsBackhaul;
    } else if (status.satellite_available) {
      decision.action = PolicyAction::SatelliteFallback;
    } else {
      decision.action = PolicyAction::Outage;
    }
    return decision;
  }

  if (status.haps_available) {
    // Battery protection: all communication rides the HAPS, the BESS is
    // neither charged nor discharged.
    decision.action = PolicyAction::RadioOffServeViaHaps;
    decision.charge_bess_from_res = false;
    return decision;
  }

  if (status.soc > reserve_soc) {
    decision.action = PolicyAction::RunOnBess;
    return decision;
  }

  if (status.generator_fuel_h > 0.0) {
    decision.action = PolicyAction::RunOnGenerator;
    decision.request_ev = !status.ev_inbound;
    return decision;
  }
  if (!status.ev_inbound) {
    decision.action = PolicyAction::RequestEv;
    decision.request_ev = true;
    return decision;
  }
  if (status.satellite_available) {
    decision.action = PolicyAction::SatelliteFallback;
    return decision;
  }
  decision.action = PolicyAction::Outage;
  return decision;
}

}  // namespace hapsim
