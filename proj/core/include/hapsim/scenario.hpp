#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hapsim/energy.hpp"
#include "hapsim/policy.hpp"

namespace hapsim {

enum class EventKind {
  BsFailFraction,  // value = cumulative fraction of sites destroyed
  GridOutage,      // sites list, empty = all
  GridRestore,
  BackboneCut,
  FuelDelivery,  // value = hours of fuel added
  HapsUp,        // value = active fleet size after the event (idempotent)
  HapsDown,
  SatUp,
};

const char* to_string(EventKind kind);
EventKind event_kind_from_string(const std::string& name);

struct ScenarioEvent {
  double time_h = 0.0;
  EventKind kind = EventKind::GridOutage;
  double value = 0.0;
  std::vector<int> sites;  // empty = all sites
};

enum class PolicyMode { None, PreDisaster, InDisaster };

const char* to_string(PolicyMode mode);
PolicyMode policy_mode_from_string(const std::string& name);

/// Per-site equipment parameters shared by every GBS in a run.
struct SiteConfig {
  BessState bess{};
  GeneratorState generator{};
  ResProfile res{};
  EvDispatch ev{};
  double active_load_kw = 3.0;  // radio + baseband serving
  double idle_load_kw = 0.5;    // radio asleep, backhaul electronics alive
};

/// Diurnal traffic curve for the pre-disaster policy: trough at midnight,
/// peak at noon.
struct TrafficProfile {
  double trough = 0.05;
  double peak = 0.95;
};

double traffic_load(const TrafficProfile& profile, double hour_of_day);

struct ScenarioConfig {
  int n_sites = 100;
  long total_users = 100000;
  double horizon_h = 72.0;
  double dt_h = 0.25;
  double start_hour_of_day = 4.0;  // clock time at t = 0
  PolicyMode policy = PolicyMode::InDisaster;
  SiteConfig site{};
  PolicyThresholds thresholds{};
  TrafficProfile traffic{};
  long haps_ran_capacity_users = 200000;  // per active HAPS
  double satellite_capacity_fraction = 0.2;
  int initial_haps = 0;
  bool initial_satellite = false;
  std::vector<ScenarioEvent> events;
  std::uint64_t seed = 1;
};

/// Mutable per-site state evolved by the tick loop.
struct SiteRuntime {
  bool destroyed = false;
  bool grid_ok = true;
  bool backbone_ok = true;
  bool radio_on = true;
  BessState bess{};
  GeneratorState generator{};
  bool ev_inbound = false;
  double ev_arrival_h = 0.0;
  double ev_remaining_kwh = 0.0;
};

struct SimState {
  std::vector<SiteRuntime> sites;
  int haps_active = 0;
  bool satellite_up = false;
  std::vector<int> fail_order;  // seeded shuffle; prefix = destroyed sites
  int failed_count = 0;
};

SimState init_state(const ScenarioConfig& config);

/// Apply one due event in place. Unknown site ids raise ConfigError.
void apply_event(SimState& state, const ScenarioConfig& config,
                 const ScenarioEvent& event);

struct ServedHistogram {
  long gbs = 0;
  long haps_ran = 0;
  long haps_backhaul = 0;
  long satellite = 0;

  long total() const { return gbs + haps_ran + haps_backhaul + satellite; }
};

/// Region-aggregate AC-side energy flows over one tick, kWh.
struct EnergyFlows {
  double grid_kwh = 0.0;
  double res_kwh = 0.0;
  double generator_kwh = 0.0;
  double ev_kwh = 0.0;
  double bess_discharge_kwh = 0.0;
  double bess_charge_kwh = 0.0;
  double load_kwh = 0.0;
  double curtailed_kwh = 0.0;
};

struct TickRow {
  double time_h = 0.0;
  long active_users = 0;
  ServedHistogram served{};
  long unserved = 0;
  double coverage_ratio = 1.0;
  double mean_soc = 1.0;
  int haps_active = 0;
  bool satellite_up = false;
  int sites_destroyed = 0;
  EnergyFlows energy{};
};

struct DecisionRow {
  double time_h = 0.0;
  int site = 0;
  GbsStatus status{};
  PolicyAction action = PolicyAction::ServeNormally;
};

struct LedgerRow {
  double time_h = 0.0;
  int site = 0;
  std::string source;  // grid|res|generator|ev|bess_discharge|bess_charge|load|curtailed
  double kwh = 0.0;
};

struct TimelineResult {
  std::vector<TickRow> ticks;
  std::vector<DecisionRow> decisions;
  std::vector<LedgerRow> ledger;
  long total_users = 0;
  double dt_h = 0.0;
};

struct ResilienceSummary {
  double unserved_user_hours = 0.0;
  std::optional<double> time_to_full_restoration_h;
  double min_coverage_ratio = 1.0;
  double final_coverage_ratio = 1.0;
  std::map<std::string, double> energy_by_source_kwh;
};

/// Discrete-time run: per tick, apply due events, decide per site, step the
/// energy plant, and allocate the shared HAPS RAN budget in site-index order.
TimelineResult run_timeline(const ScenarioConfig& config);

/// Aggregate metrics recomputed from the per-tick rows.
ResilienceSummary resilience_metrics(const TimelineResult& result);

}  // namespace hapsim
