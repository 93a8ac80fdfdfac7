#pragma once

namespace hapsim {

/// Battery energy storage at a GBS site. soc is the stored fraction of
/// capacity_kwh; reserve_soc is the floor the in-disaster policy defends.
struct BessState {
  double capacity_kwh = 20.0;
  double soc = 1.0;
  double max_charge_kw = 10.0;
  double max_discharge_kw = 10.0;
  double reserve_soc = 0.1;
  double eta_charge = 0.95;
  double eta_discharge = 0.95;
};

/// Result of one battery step. absorbed/delivered are measured at the store
/// (post-efficiency), so soc * capacity closes as
/// initial + sum(absorbed) - sum(delivered).
struct BessStepResult {
  BessState state;
  double absorbed_kwh = 0.0;
  double delivered_kwh = 0.0;
};

struct GeneratorState {
  double fuel_hours_remaining = 3.5;
  bool burn_active = false;
  double output_kw = 5.0;
};

struct GeneratorStepResult {
  GeneratorState state;
  double supplied_kw = 0.0;  // tick-average power actually delivered
};

/// Renewable generation at a site: constant wind mean plus a half-sine PV
/// curve between sunrise and sunset.
struct ResProfile {
  double pv_peak_kw = 2.0;
  double wind_mean_kw = 0.2;
  double sunrise_h = 6.0;
  double sunset_h = 18.0;
};

/// A volunteer EV (or mobile BESS) dispatched to recharge a site battery.
struct EvDispatch {
  double travel_time_h = 1.0;
  double deliverable_kwh = 40.0;
  double delivery_rate_kw = 10.0;
};

/// Constant-rate charging window produced by dispatch_ev.
struct EvChargeSchedule {
  double start_h = 0.0;
  double end_h = 0.0;
  double rate_kw = 0.0;

  double energy_kwh() const { return (end_h - start_h) * rate_kw; }
  bool active_at(double t_h) const { return t_h > start_h && t_h <= end_h; }
};

/// Site renewable output (kW) at the given hour of day. Hours outside
/// [0, 24) wrap.
double res_generation(const ResProfile& profile, double hour_of_day);

/// Advance the battery one tick. charge_kw is source-side power offered,
/// discharge_kw is load-side power demanded; at most one may be nonzero and
/// both must respect the rate limits. The store clamps to [0, capacity].
BessStepResult step_bess(const BessState& state, double charge_kw,
                         double discharge_kw, double dt_h);

/// Advance the generator one tick against a demand. Burns fuel only while
/// supplying; a tick that exhausts the tank supplies pro-rata and stops.
GeneratorStepResult step_generator(const GeneratorState& state, double demand_kw,
                                   double dt_h);

/// Charging window for an EV requested at request_time_h: starts after the
/// travel time and runs at delivery_rate_kw until deliverable_kwh is gone.
EvChargeSchedule dispatch_ev(double request_time_h, const EvDispatch& ev);

}  // namespace hapsim
