#include "hapsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hapsim/errors.hpp"
#include "hapsim/rng.hpp"

namespace hapsim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::BsFailFraction: return "bs_fail_fraction";
    case EventKind::GridOutage: return "grid_outage";
    case EventKind::GridRestore: return "grid_restore";
    case EventKind::BackboneCut: return "backbone_cut";
    case EventKind::FuelDelivery: return "fuel_delivery";
    case EventKind::HapsUp: return "haps_up";
    case EventKind::HapsDown: return "haps_down";
    case EventKind::SatUp: return "sat_up";
  }
  return "?";
}

EventKind event_kind_from_string(const std::string& name) {
  if (name == "bs_fail_fraction") return EventKind::BsFailFraction;
  if (name == "grid_outage") return EventKind::GridOutage;
  if (name == "grid_restore") return EventKind::GridRestore;
  if (name == "backbone_cut") return EventKind::BackboneCut;
  if (name == "fuel_delivery") return EventKind::FuelDelivery;
  if (name == "haps_up") return EventKind::HapsUp;
  if (name == "haps_down") return EventKind::HapsDown;
  if (name == "sat_up") return EventKind::SatUp;
  throw ConfigError("events.kind", "unknown event kind '" + name + "'");
}

const char* to_string(PolicyMode mode) {
  switch (mode) {
    case PolicyMode::None: return "none";
    case PolicyMode::PreDisaster: return "predisaster";
    case PolicyMode::InDisaster: return "indisaster";
  }
  return "?";
}

PolicyMode policy_mode_from_string(const std::string& name) {
  if (name == "none") return PolicyMode::None;
  if (name == "predisaster") return PolicyMode::PreDisaster;
  if (name == "indisaster") return PolicyMode::InDisaster;
  throw ConfigError("scenario.policy",
                    "unknown policy mode '" + name +
                        "' (expected none, predisaster or indisaster)");
}

double traffic_load(const TrafficProfile& profile, double hour_of_day) {
  double h = std::fmod(hour_of_day, 24.0);
  if (h < 0.0) h += 24.0;
  const double swing = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * h / 24.0));
  return profile.trough + (profile.peak - profile.trough) * swing;
}

SimState init_state(const ScenarioConfig& config) {
  SimState state;
  state.sites.resize(static_cast<std::size_t>(config.n_sites));
  for (auto& site : state.sites) {
    site.bess = config.site.bess;
    site.generator = config.site.generator;
  }
  state.haps_active = config.initial_haps;
  state.satellite_up = config.initial_satellite;

  state.fail_order.resize(static_cast<std::size_t>(config.n_sites));
  for (int i = 0; i < config.n_sites; ++i) {
    state.fail_order[static_cast<std::size_t>(i)] = i;
  }
  auto rng = SubstreamRng::keyed(config.seed, {kSiteFailureStream});
  for (int i = config.n_sites - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(state.fail_order[static_cast<std::size_t>(i)],
              state.fail_order[static_cast<std::size_t>(j)]);
  }
  return state;
}

namespace {

std::vector<int> resolve_sites(const SimState& state, const ScenarioEvent& event) {
  const int n = static_cast<int>(state.sites.size());
  if (event.sites.empty()) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }
  for (int id : event.sites) {
    if (id < 0 || id >= n) {
      throw ConfigError("events.sites",
                        "unknown site id " + std::to_string(id) + " (have " +
                            std::to_string(n) + " sites)");
    }
  }
  return event.sites;
}

}  // namespace

void apply_event(SimState& state, const ScenarioConfig& config,
                 const ScenarioEvent& event) {
  switch (event.kind) {
    case EventKind::BsFailFraction: {
      if (event.value < 0.0 || event.value > 1.0) {
        throw ConfigError("events.value", "bs_fail_fraction must be in [0, 1]");
      }
      const int target = static_cast<int>(
          std::llround(event.value * static_cast<double>(config.n_sites)));
      while (state.failed_count < target) {
        const int victim = state.fail_order[static_cast<std::size_t>(state.failed_count)];
        state.sites[static_cast<std::size_t>(victim)].destroyed = true;
        ++state.failed_count;
      }
      break;
    }
    case EventKind::GridOutage:
      for (int id : resolve_sites(state, event)) {
        state.sites[static_cast<std::size_t>(id)].grid_ok = false;
      }
      break;
    case EventKind::GridRestore:
      for (int id : resolve_sites(state, event)) {
        state.sites[static_cast<std::size_t>(id)].grid_ok = true;
      }
      break;
    case EventKind::BackboneCut:
      for (int id : resolve_sites(state, event)) {
        state.sites[static_cast<std::size_t>(id)].backbone_ok = false;
      }
      break;
    case EventKind::FuelDelivery:
      for (int id : resolve_sites(state, event)) {
        state.sites[static_cast<std::size_t>(id)].generator.fuel_hours_remaining +=
            event.value;
      }
      break;
    case EventKind::HapsUp:
    case EventKind::HapsDown:
      state.haps_active = std::max(0, static_cast<int>(std::llround(event.value)));
      break;
    case EventKind::SatUp:
      state.satellite_up = true;
      break;
  }
}

namespace {

/// Site load (kW) implied by a primary action.
double load_for(PolicyAction action, const SiteConfig& site) {
  switch (action) {
    case PolicyAction::ServeNormally:
    case PolicyAction::OffloadNewArrivals:
    case PolicyAction::Wake:
    case PolicyAction::HapsBackhaul:
    case PolicyAction::RunOnBess:
    case PolicyAction::RunOnGenerator:
      return site.active_load_kw;
    case PolicyAction::SleepOffloadHaps:
      return site.idle_load_kw;
    case PolicyAction::RadioOffServeViaHaps:
    case PolicyAction::RequestEv:
    case PolicyAction::SatelliteFallback:
    case PolicyAction::Outage:
      return 0.0;
  }
  return 0.0;
}

bool ev_may_charge(PolicyAction action) {
  switch (action) {
    case PolicyAction::RunOnBess:
    case PolicyAction::RunOnGenerator:
    case PolicyAction::RequestEv:
    case PolicyAction::SatelliteFallback:
    case PolicyAction::Outage:
      return true;
    default:
      return false;
  }
}

struct SiteFlows {
  double grid_kwh = 0.0;
  double res_kwh = 0.0;
  double generator_kwh = 0.0;
  double ev_kwh = 0.0;
  double bess_discharge_kwh = 0.0;
  double bess_charge_kwh = 0.0;
  double load_kwh = 0.0;
  double curtailed_kwh = 0.0;
  bool fully_powered = false;
};

/// One site, one tick: route energy for the decided action and update the
/// battery / generator / EV state in place.
SiteFlows step_site_energy(SiteRuntime& site, const SiteConfig& config,
                           const PolicyDecision& decision, double time_h,
                           double hour_of_day, double dt_h) {
  SiteFlows flows;
  if (site.destroyed) {
    return flows;
  }

  const double res_kw = res_generation(config.res, hour_of_day);
  flows.res_kwh = res_kw * dt_h;

  const double desired_kw = load_for(decision.action, config);
  double res_to_load_kwh = 0.0;

  switch (decision.action) {
    case PolicyAction::ServeNormally:
    case PolicyAction::OffloadNewArrivals:
    case PolicyAction::Wake:
    case PolicyAction::SleepOffloadHaps:
    case PolicyAction::HapsBackhaul: {
      res_to_load_kwh = std::min(res_kw, desired_kw) * dt_h;
      flows.grid_kwh = desired_kw * dt_h - res_to_load_kwh;
      flows.load_kwh = desired_kw * dt_h;
      flows.fully_powered = true;
      break;
    }
    case PolicyAction::RunOnBess: {
      const double remaining_kw = std::max(0.0, desired_kw - res_kw);
      const double stored_kwh = site.bess.soc * site.bess.capacity_kwh;
      const double available_kw =
          std::min(site.bess.max_discharge_kw,
                   stored_kwh * site.bess.eta_discharge / dt_h);
      if (available_kw + 1e-12 >= remaining_kw) {
        if (remaining_kw > 0.0) {
          const auto step = step_bess(site.bess, 0.0, remaining_kw, dt_h);
          site.bess = step.state;
          flows.bess_discharge_kwh = step.delivered_kwh * site.bess.eta_discharge;
        }
        res_to_load_kwh = std::min(res_kw, desired_kw) * dt_h;
        flows.load_kwh = desired_kw * dt_h;
        flows.fully_powered = true;
      }
      // else: battery cannot carry the tick, site goes dark (no draw)
      break;
    }
    case PolicyAction::RunOnGenerator: {
      const double remaining_kw = std::max(0.0, desired_kw - res_kw);
      const auto step = step_generator(site.generator, remaining_kw, dt_h);
      site.generator = step.state;
      flows.generator_kwh = step.supplied_kw * dt_h;
      flows.fully_powered = step.supplied_kw + 1e-12 >= remaining_kw;
      if (flows.fully_powered) {
        res_to_load_kwh = std::min(res_kw, desired_kw) * dt_h;
        flows.load_kwh = desired_kw * dt_h;
      } else {
        // Ran out of fuel mid-tick: consumed what was produced, then dark.
        res_to_load_kwh = std::min(res_kw, desired_kw) * dt_h *
                          (dt_h > 0.0 && remaining_kw > 0.0
                               ? step.supplied_kw / remaining_kw
                               : 0.0);
        flows.load_kwh = res_to_load_kwh + flows.generator_kwh;
      }
      break;
    }
    case PolicyAction::RadioOffServeViaHaps:
      // Battery protection: nothing in, nothing out; RES is curtailed.
      flows.curtailed_kwh = flows.res_kwh;
      return flows;
    case PolicyAction::RequestEv:
    case PolicyAction::SatelliteFallback:
    case PolicyAction::Outage:
      break;
  }

  // Route RES surplus (and a delivering EV) into the battery.
  double res_surplus_kwh = flows.res_kwh - res_to_load_kwh;
  double charge_res_kw = 0.0;
  double ev_kw = 0.0;
  if (decision.charge_bess_from_res) {
    charge_res_kw = std::min(res_surplus_kwh / dt_h, site.bess.max_charge_kw);
  }
  if (site.ev_inbound && site.ev_remaining_kwh > 1e-12 &&
      site.ev_arrival_h <= time_h + 1e-9 && !site.grid_ok &&
      ev_may_charge(decision.action)) {
    ev_kw = std::min({config.ev.delivery_rate_kw,
                      site.bess.max_charge_kw - charge_res_kw,
                      site.ev_remaining_kwh / dt_h});
    ev_kw = std::max(0.0, ev_kw);
  }
  const double charge_kw = charge_res_kw + ev_kw;
  if (charge_kw > 0.0) {
    const auto step = step_bess(site.bess, charge_kw, 0.0, dt_h);
    site.bess = step.state;
    const double ac_in_kwh = step.absorbed_kwh / site.bess.eta_charge;
    const double res_ac_kwh = std::min(charge_res_kw * dt_h, ac_in_kwh);
    const double ev_ac_kwh = ac_in_kwh - res_ac_kwh;
    flows.bess_charge_kwh = ac_in_kwh;
    flows.ev_kwh = ev_ac_kwh;
    site.ev_remaining_kwh -= ev_ac_kwh;
    if (site.ev_remaining_kwh <= 1e-9) {
      site.ev_inbound = false;
      site.ev_remaining_kwh = 0.0;
    }
    res_surplus_kwh -= res_ac_kwh;
  }
  flows.curtailed_kwh = res_surplus_kwh;
  return flows;
}

/// Baseline behavior with management disabled: grid, then battery (down to
/// empty, no reserve), then generator, then dark. No HAPS offload, no EV,
/// no satellite.
PolicyDecision baseline_decision(const SiteRuntime& site, double needed_kw,
                                 double dt_h) {
  PolicyDecision decision;
  decision.charge_bess_from_res = true;
  if (site.grid_ok) {
    decision.action = PolicyAction::ServeNormally;
    return decision;
  }
  const double stored = site.bess.soc * site.bess.capacity_kwh;
  const double available_kw =
      std::min(site.bess.max_discharge_kw, stored * site.bess.eta_discharge / dt_h);
  if (available_kw + 1e-12 >= needed_kw) {
    decision.action = PolicyAction::RunOnBess;
    return decision;
  }
  if (site.generator.fuel_hours_remaining > 0.0) {
    decision.action = PolicyAction::RunOnGenerator;
    return decision;
  }
  decision.action = PolicyAction::Outage;
  return decision;
}

}  // namespace

TimelineResult run_timeline(const ScenarioConfig& config) {
  if (config.dt_h <= 0.0) {
    throw std::invalid_argument("run_timeline: dt_h must be > 0");
  }
  if (config.n_sites < 1) {
    throw std::invalid_argument("run_timeline: need at least one site");
  }
  for (std::size_t i = 1; i < config.events.size(); ++i) {
    if (config.events[i].time_h < config.events[i - 1].time_h) {
      throw std::invalid_argument("run_timeline: events must be sorted by time");
    }
  }

  SimState state = init_state(config);

  // Equal user partition; the first (total mod n) sites carry one extra.
  std::vector<long> users_per_site(static_cast<std::size_t>(config.n_sites));
  const long base = config.total_users / config.n_sites;
  const long extra = config.total_users % config.n_sites;
  for (int i = 0; i < config.n_sites; ++i) {
    users_per_site[static_cast<std::size_t>(i)] = base + (i < extra ? 1 : 0);
  }

  TimelineResult result;
  result.total_users = config.total_users;
  result.dt_h = config.dt_h;

  const int n_ticks = static_cast<int>(
      std::ceil(config.horizon_h / config.dt_h - 1e-9));
  std::size_t next_event = 0;

  for (int tick = 0; tick < n_ticks; ++tick) {
    const double t = tick * config.dt_h;
    const double hour_of_day = std::fmod(config.start_hour_of_day + t, 24.0);

    while (next_event < config.events.size() &&
           config.events[next_event].time_h <= t + 1e-9) {
      apply_event(state, config, config.events[next_event]);
      ++next_event;
    }

    TickRow row;
    row.time_h = t;
    row.haps_active = state.haps_active;
    row.satellite_up = state.satellite_up;
    row.sites_destroyed = state.failed_count;

    long haps_budget =
        static_cast<long>(state.haps_active) * config.haps_ran_capacity_users;
    long sat_budget =
        state.satellite_up
            ? static_cast<long>(std::llround(config.satellite_capacity_fraction *
                                             static_cast<double>(config.total_users)))
            : 0;

    const double tick_load = config.policy == PolicyMode::PreDisaster
                                 ? traffic_load(config.traffic, hour_of_day)
                                 : 1.0;

    double soc_sum = 0.0;
    for (int i = 0; i < config.n_sites; ++i) {
      auto& site = state.sites[static_cast<std::size_t>(i)];
      const long users = users_per_site[static_cast<std::size_t>(i)];
      const long active = static_cast<long>(
          std::llround(tick_load * static_cast<double>(users)));

      if (site.destroyed) {
        // Displaced users fall back on the HAPS RAN footprint.
        const long via_haps = std::min(active, haps_budget);
        haps_budget -= via_haps;
        row.served.haps_ran += via_haps;
        row.unserved += active - via_haps;
        row.active_users += active;
        soc_sum += site.bess.soc;
        continue;
      }

      GbsStatus status;
      status.radio_on = site.radio_on;
      status.grid_ok = site.grid_ok;
      status.backbone_ok = site.backbone_ok;
      status.haps_available = state.haps_active > 0;
      status.satellite_available = state.satellite_up;
      status.soc = site.bess.soc;
      status.generator_fuel_h = site.generator.fuel_hours_remaining;
      status.ev_inbound = site.ev_inbound;
      status.load = tick_load;

      PolicyDecision decision;
      switch (config.policy) {
        case PolicyMode::InDisaster:
          decision = decide_indisaster(status, site.bess.reserve_soc);
          break;
        case PolicyMode::PreDisaster:
          // Disaster events override the sustainability policy.
          decision = status.grid_ok
                         ? decide_predisaster(status, config.thresholds)
                         : decide_indisaster(status, site.bess.reserve_soc);
          break;
        case PolicyMode::None: {
          const double res_kw = res_generation(config.site.res, hour_of_day);
          const double needed_kw =
              std::max(0.0, config.site.active_load_kw - res_kw);
          decision = baseline_decision(site, needed_kw, config.dt_h);
          break;
        }
      }

      if (decision.action == PolicyAction::SleepOffloadHaps) site.radio_on = false;
      if (decision.action == PolicyAction::Wake) site.radio_on = true;

      if (decision.request_ev && !site.ev_inbound) {
        site.ev_inbound = true;
        site.ev_arrival_h = dispatch_ev(t, config.site.ev).start_h;
        site.ev_remaining_kwh = config.site.ev.deliverable_kwh;
      }

      result.decisions.push_back(DecisionRow{t, i, status, decision.action});

      const SiteFlows flows =
          step_site_energy(site, config.site, decision, t, hour_of_day, config.dt_h);
      row.energy.grid_kwh += flows.grid_kwh;
      row.energy.res_kwh += flows.res_kwh;
      row.energy.generator_kwh += flows.generator_kwh;
      row.energy.ev_kwh += flows.ev_kwh;
      row.energy.bess_discharge_kwh += flows.bess_discharge_kwh;
      row.energy.bess_charge_kwh += flows.bess_charge_kwh;
      row.energy.load_kwh += flows.load_kwh;
      row.energy.curtailed_kwh += flows.curtailed_kwh;

      auto push_ledger = [&](const char* source, double kwh) {
        if (kwh != 0.0) {
          result.ledger.push_back(LedgerRow{t, i, source, kwh});
        }
      };
      push_ledger("grid", flows.grid_kwh);
      push_ledger("res", flows.res_kwh);
      push_ledger("generator", flows.generator_kwh);
      push_ledger("ev", flows.ev_kwh);
      push_ledger("bess_discharge", flows.bess_discharge_kwh);
      push_ledger("bess_charge", flows.bess_charge_kwh);
      push_ledger("load", flows.load_kwh);
      push_ledger("curtailed", flows.curtailed_kwh);

      // Serving tally.
      row.active_users += active;
      soc_sum += site.bess.soc;

      switch (decision.action) {
        case PolicyAction::ServeNormally:
        case PolicyAction::Wake:
          row.served.gbs += active;
          break;
        case PolicyAction::OffloadNewArrivals: {
          const long own = std::min(
              active, static_cast<long>(std::llround(
                          config.thresholds.rho_high * static_cast<double>(users))));
          row.served.gbs += own;
          const long offload = std::min(active - own, haps_budget);
          haps_budget -= offload;
          row.served.haps_ran += offload;
          row.unserved += active - own - offload;
          break;
        }
        case PolicyAction::SleepOffloadHaps: {
          const long via_haps = std::min(active, haps_budget);
          haps_budget -= via_haps;
          row.served.haps_ran += via_haps;
          row.unserved += active - via_haps;
          break;
        }
        case PolicyAction::HapsBackhaul:
          row.served.haps_backhaul += active;
          break;
        case PolicyAction::RadioOffServeViaHaps: {
          const long via_haps = std::min(active, haps_budget);
          haps_budget -= via_haps;
          row.served.haps_ran += via_haps;
          row.unserved += active - via_haps;
          break;
        }
        case PolicyAction::RunOnBess:
        case PolicyAction::RunOnGenerator:
          if (flows.fully_powered && site.backbone_ok) {
            row.served.gbs += active;
          } else {
            row.unserved += active;
          }
          break;
        case PolicyAction::SatelliteFallback: {
          const long via_sat = std::min(active, sat_budget);
          sat_budget -= via_sat;
          row.served.satellite += via_sat;
          row.unserved += active - via_sat;
          break;
        }
        case PolicyAction::RequestEv:
        case PolicyAction::Outage:
          row.unserved += active;
          break;
      }
    }

    row.mean_soc = soc_sum / static_cast<double>(config.n_sites);
    row.coverage_ratio =
        row.active_users > 0
            ? static_cast<double>(row.served.total()) /
                  static_cast<double>(row.active_users)
            : 1.0;
    result.ticks.push_back(row);
  }
  return result;
}

ResilienceSummary resilience_metrics(const TimelineResult& result) {
  if (result.ticks.empty()) {
    throw std::invalid_argument("resilience_metrics: empty timeline");
  }
  ResilienceSummary summary;
  summary.min_coverage_ratio = 1.0;
  for (const TickRow& row : result.ticks) {
    summary.unserved_user_hours +=
        static_cast<double>(row.unserved) * result.dt_h;
    summary.min_coverage_ratio = std::min(summary.min_coverage_ratio,
                                          row.coverage_ratio);
  }
  summary.final_coverage_ratio = result.ticks.back().coverage_ratio;

  // First time from which coverage stays >= 0.999 to the end of the horizon.
  std::optional<double> restoration;
  for (auto it = result.ticks.rbegin(); it != result.ticks.rend(); ++it) {
    if (it->coverage_ratio >= 0.999) {
      restoration = it->time_h;
    } else {
      break;
    }
  }
  summary.time_to_full_restoration_h = restoration;

  for (const LedgerRow& row : result.ledger) {
    summary.energy_by_source_kwh[row.source] += row.kwh;
  }
  return summary;
}

}  // namespace hapsim
