#include "hapsim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hapsim {

double res_generation(const ResProfile& profile, double hour_of_day) {
  double h = std::fmod(hour_of_day, 24.0);
  if (h < 0.0) h += 24.0;
  const double daylight = profile.sunset_h - profile.sunrise_h;
  double pv = 0.0;
  if (daylight > 0.0) {
    const double phase = std::numbers::pi * (h - profile.sunrise_h) / daylight;
    pv = profile.pv_peak_kw * std::max(0.0, std::sin(phase));
    if (h < profile.sunrise_h || h > profile.sunset_h) pv = 0.0;
  }
  return profile.wind_mean_kw + pv;
}

BessStepResult step_bess(const BessState& state, double charge_kw,
                         double discharge_kw, double dt_h) {
  if (charge_kw < 0.0 || discharge_kw < 0.0 || dt_h < 0.0) {
    throw std::invalid_argument("step_bess: rates and dt must be >= 0");
  }
  if (charge_kw > state.max_charge_kw + 1e-12) {
    throw std::invalid_argument("step_bess: charge rate exceeds max_charge_kw");
  }
  if (discharge_kw > state.max_discharge_kw + 1e-12) {
    throw std::invalid_argument("step_bess: discharge rate exceeds max_discharge_kw");
  }
  if (charge_kw > 0.0 && discharge_kw > 0.0) {
    throw std::invalid_argument("step_bess: cannot charge and discharge in one tick");
  }

  BessStepResult result{state, 0.0, 0.0};
  const double stored = state.soc * state.capacity_kwh;
  if (charge_kw > 0.0) {
    const double headroom = state.capacity_kwh - stored;
    result.absorbed_kwh = std::min(charge_kw * state.eta_charge * dt_h, headroom);
  } else if (discharge_kw > 0.0) {
    result.delivered_kwh = std::min(discharge_kw / state.eta_discharge * dt_h, stored);
  }
  const double next = stored + result.absorbed_kwh - result.delivered_kwh;
  result.state.soc = std::clamp(next / state.capacity_kwh, 0.0, 1.0);
  return result;
}

GeneratorStepResult step_generator(const GeneratorState& state, double demand_kw,
                                   double dt_h) {
  if (dt_h <= 0.0) {
    throw std::invalid_argument("step_generator: dt must be > 0");
  }
  GeneratorStepResult result{state, 0.0};
  result.state.burn_active = false;
  if (demand_kw <= 0.0 || state.fuel_hours_remaining <= 0.0) {
    return result;  // idles off, fuel untouched
  }
  const double burn_h = std::min(dt_h, state.fuel_hours_remaining);
  const double power = std::min(demand_kw, state.output_kw);
  result.supplied_kw = power * burn_h / dt_h;
  result.state.fuel_hours_remaining = state.fuel_hours_remaining - burn_h;
  result.state.burn_active = true;
  return result;
}

EvChargeSchedule dispatch_ev(double request_time_h, const EvDispatch& ev) {
  EvChargeSchedule schedule;
  schedule.start_h = request_time_h + ev.travel_time_h;
  schedule.rate_kw = ev.delivery_rate_kw;
  if (ev.deliverable_kwh > 0.0 && ev.delivery_rate_kw > 0.0) {
    schedule.end_h = schedule.start_h + ev.deliverable_kwh / ev.delivery_rate_kw;
  } else {
    schedule.end_h = schedule.start_h;  // nothing to deliver
    schedule.rate_kw = 0.0;
  }
  return schedule;
}

}  // namespace hapsim
