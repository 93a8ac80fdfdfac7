#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "hapsim/config.hpp"
#include "hapsim/errors.hpp"
#include "hapsim/scenario.hpp"

using namespace hapsim;

namespace {

ScenarioConfig quiet_scenario(int sites, long users) {
  ScenarioConfig sc = default_config().scenario;
  sc.n_sites = sites;
  sc.total_users = users;
  sc.events.clear();
  sc.horizon_h = 6.0;
  return sc;
}

int tick_at(const TimelineResult& result, double time_h) {
  for (std::size_t i = 0; i < result.ticks.size(); ++i) {
    if (std::abs(result.ticks[i].time_h - time_h) < 1e-9) return static_cast<int>(i);
  }
  REQUIRE(false);
  return -1;
}

}  // namespace

TEST_CASE("traffic_load has the configured trough and peak") {
  const TrafficProfile traffic;  // 0.05 .. 0.95
  CHECK(traffic_load(traffic, 0.0) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(traffic_load(traffic, 12.0) == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(traffic_load(traffic, 6.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("apply_event mutates exactly the named state") {
  const ScenarioConfig sc = quiet_scenario(10, 1000);
  SimState state = init_state(sc);

  apply_event(state, sc, {0.0, EventKind::GridOutage, 0.0, {3, 4}});
  CHECK_FALSE(state.sites[3].grid_ok);
  CHECK_FALSE(state.sites[4].grid_ok);
  CHECK(state.sites[5].grid_ok);

  apply_event(state, sc, {1.0, EventKind::GridRestore, 0.0, {3}});
  CHECK(state.sites[3].grid_ok);
  CHECK_FALSE(state.sites[4].grid_ok);

  apply_event(state, sc, {1.0, EventKind::BackboneCut, 0.0, {0}});
  CHECK_FALSE(state.sites[0].backbone_ok);

  state.sites[2].generator.fuel_hours_remaining = 0.0;
  apply_event(state, sc, {2.0, EventKind::FuelDelivery, 3.5, {2}});
  CHECK(state.sites[2].generator.fuel_hours_remaining ==
        doctest::Approx(3.5).epsilon(1e-12));

  CHECK_THROWS_AS(apply_event(state, sc, {0.0, EventKind::GridOutage, 0.0, {99}}),
                  ConfigError);
}

TEST_CASE("haps_up is idempotent; bs_fail_fraction is cumulative") {
  const ScenarioConfig sc = quiet_scenario(100, 10000);
  SimState state = init_state(sc);

  apply_event(state, sc, {0.0, EventKind::HapsUp, 1.0, {}});
  CHECK(state.haps_active == 1);
  apply_event(state, sc, {0.0, EventKind::HapsUp, 1.0, {}});
  CHECK(state.haps_active == 1);  // applying twice equals applying once

  apply_event(state, sc, {0.0, EventKind::BsFailFraction, 0.25, {}});
  CHECK(state.failed_count == 25);
  apply_event(state, sc, {1.0, EventKind::BsFailFraction, 0.5, {}});
  CHECK(state.failed_count == 50);
  // Re-applying a lower fraction never resurrects sites.
  apply_event(state, sc, {2.0, EventKind::BsFailFraction, 0.25, {}});
  CHECK(state.failed_count == 50);

  int destroyed = 0;
  for (const auto& site : state.sites) destroyed += site.destroyed ? 1 : 0;
  CHECK(destroyed == 50);

  apply_event(state, sc, {3.0, EventKind::HapsDown, 0.0, {}});
  CHECK(state.haps_active == 0);
  apply_event(state, sc, {3.0, EventKind::SatUp, 0.0, {}});
  CHECK(state.satellite_up);
}

TEST_CASE("nominal steady state covers everyone from the grid") {
  const ScenarioConfig sc = quiet_scenario(10, 1000);
  const TimelineResult result = run_timeline(sc);
  REQUIRE_FALSE(result.ticks.empty());
  for (const TickRow& row : result.ticks) {
    CHECK(row.coverage_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.served.gbs == 1000);
    CHECK(row.unserved == 0);
  }
}

TEST_CASE("a quarter of the sites failing drops coverage to 0.75 without HAPS") {
  ScenarioConfig sc = quiet_scenario(100, 100000);
  sc.events = {{0.0, EventKind::BsFailFraction, 0.25, {}}};
  const TimelineResult result = run_timeline(sc);
  CHECK(result.ticks.front().coverage_ratio == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("one HAPS with enough capacity restores the displaced users") {
  // 4-site toy case: one site destroyed, HAPS capacity covers its share.
  ScenarioConfig sc = quiet_scenario(4, 4000);
  sc.haps_ran_capacity_users = 1000;
  sc.events = {{0.0, EventKind::BsFailFraction, 0.25, {}},
               {0.0, EventKind::HapsUp, 1.0, {}}};
  const TimelineResult result = run_timeline(sc);
  for (const TickRow& row : result.ticks) {
    CHECK(row.coverage_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.served.haps_ran == 1000);
    CHECK(row.served.gbs == 3000);
  }
}

TEST_CASE("oversubscribed HAPS capacity leaves the excess unserved, never negative") {
  ScenarioConfig sc = quiet_scenario(4, 4000);
  sc.haps_ran_capacity_users = 600;  // short of the 1000 displaced
  sc.events = {{0.0, EventKind::BsFailFraction, 0.5, {}},
               {0.0, EventKind::HapsUp, 1.0, {}}};
  const TimelineResult result = run_timeline(sc);
  for (const TickRow& row : result.ticks) {
    CHECK(row.served.haps_ran == 600);
    CHECK(row.unserved == 1400);
    CHECK(row.served.total() + row.unserved == row.active_users);
    CHECK(row.active_users == 4000);
  }
}

TEST_CASE("served plus unserved equals the population on every tick") {
  ScenarioConfig sc = default_config().scenario;
  sc.horizon_h = 48.0;
  const TimelineResult result = run_timeline(sc);
  for (const TickRow& row : result.ticks) {
    CHECK(row.served.total() + row.unserved == row.active_users);
    CHECK(row.coverage_ratio >= 0.0);
    CHECK(row.coverage_ratio <= 1.0);
  }
}

TEST_CASE("adding a HAPS never increases unserved user-hours") {
  ScenarioConfig without = quiet_scenario(20, 20000);
  without.events = {{0.0, EventKind::GridOutage, 0.0, {}},
                    {2.0, EventKind::BsFailFraction, 0.3, {}}};
  without.horizon_h = 24.0;

  ScenarioConfig with = without;
  with.events.insert(with.events.begin() + 1,
                     ScenarioEvent{1.0, EventKind::HapsUp, 1.0, {}});

  const ResilienceSummary a = resilience_metrics(run_timeline(without));
  const ResilienceSummary b = resilience_metrics(run_timeline(with));
  CHECK(b.unserved_user_hours <= a.unserved_user_hours);
}

TEST_CASE("battery protection: SOC frozen while HAPS covers a grid outage") {
  ScenarioConfig sc = quiet_scenario(10, 10000);
  sc.events = {{0.0, EventKind::HapsUp, 1.0, {}},
               {1.0, EventKind::GridOutage, 0.0, {}},
               {20.0, EventKind::GridRestore, 0.0, {}}};
  sc.horizon_h = 24.0;
  const TimelineResult result = run_timeline(sc);

  const int outage_start = tick_at(result, 1.0);
  const int outage_end = tick_at(result, 20.0);
  const double soc_at_start = result.ticks[outage_start].mean_soc;
  for (int i = outage_start; i < outage_end; ++i) {
    CHECK(result.ticks[i].mean_soc == soc_at_start);
    CHECK(result.ticks[i].energy.bess_charge_kwh == 0.0);
    CHECK(result.ticks[i].energy.bess_discharge_kwh == 0.0);
  }
}

TEST_CASE("timeline is deterministic for identical inputs") {
  ScenarioConfig sc = default_config().scenario;
  sc.horizon_h = 24.0;
  const TimelineResult a = run_timeline(sc);
  const TimelineResult b = run_timeline(sc);
  REQUIRE(a.ticks.size() == b.ticks.size());
  for (std::size_t i = 0; i < a.ticks.size(); ++i) {
    CHECK(a.ticks[i].coverage_ratio == b.ticks[i].coverage_ratio);
    CHECK(a.ticks[i].mean_soc == b.ticks[i].mean_soc);
    CHECK(a.ticks[i].energy.load_kwh == b.ticks[i].energy.load_kwh);
  }
  REQUIRE(a.ledger.size() == b.ledger.size());
  REQUIRE(a.decisions.size() == b.decisions.size());

  // A different seed shuffles a different fail set.
  ScenarioConfig other = sc;
  other.seed = sc.seed + 1;
  SimState s1 = init_state(sc);
  SimState s2 = init_state(other);
  CHECK(s1.fail_order != s2.fail_order);
}

TEST_CASE("per-site energy ledger closes every tick") {
  ScenarioConfig sc = default_config().scenario;
  sc.horizon_h = 48.0;
  const TimelineResult result = run_timeline(sc);

  std::map<std::pair<long, int>, std::map<std::string, double>> cells;
  for (const LedgerRow& row : result.ledger) {
    const long tick = std::lround(row.time_h / result.dt_h);
    cells[{tick, row.site}][row.source] += row.kwh;
  }
  REQUIRE_FALSE(cells.empty());
  for (const auto& [key, flows] : cells) {
    const auto get = [&](const char* name) {
      const auto it = flows.find(name);
      return it == flows.end() ? 0.0 : it->second;
    };
    const double balance = get("grid") + get("res") + get("generator") + get("ev") +
                           get("bess_discharge") - get("bess_charge") -
                           get("load") - get("curtailed");
    CHECK(std::abs(balance) < 1e-9);
  }
}

TEST_CASE("pre-disaster mode sleeps at night and offloads at the peak") {
  ScenarioConfig sc = quiet_scenario(10, 10000);
  sc.policy = PolicyMode::PreDisaster;
  sc.initial_haps = 1;
  sc.start_hour_of_day = 0.0;  // start at the trough
  sc.horizon_h = 24.0;
  const TimelineResult result = run_timeline(sc);

  bool slept = false, offloaded = false, woke = false;
  for (const DecisionRow& row : result.decisions) {
    slept |= row.action == PolicyAction::SleepOffloadHaps;
    offloaded |= row.action == PolicyAction::OffloadNewArrivals;
    woke |= row.action == PolicyAction::Wake;
  }
  CHECK(slept);
  CHECK(offloaded);
  CHECK(woke);
  for (const TickRow& row : result.ticks) {
    CHECK(row.served.total() + row.unserved == row.active_users);
    CHECK(row.coverage_ratio == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Without a HAPS the sites can neither sleep nor offload.
  ScenarioConfig no_haps = sc;
  no_haps.initial_haps = 0;
  const TimelineResult plain = run_timeline(no_haps);
  for (const DecisionRow& row : plain.decisions) {
    CHECK(row.action != PolicyAction::SleepOffloadHaps);
    CHECK(row.action != PolicyAction::OffloadNewArrivals);
  }
}

TEST_CASE("resilience_metrics arithmetic and the two-pass oracle") {
  TimelineResult synthetic;
  synthetic.total_users = 100;
  synthetic.dt_h = 1.0;
  for (int i = 0; i < 2; ++i) {
    TickRow row;
    row.time_h = i;
    row.active_users = 100;
    row.served.gbs = 50;
    row.unserved = 50;
    row.coverage_ratio = 0.5;
    synthetic.ticks.push_back(row);
  }
  const ResilienceSummary half = resilience_metrics(synthetic);
  CHECK(half.unserved_user_hours == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(half.min_coverage_ratio == doctest::Approx(0.5));

  TimelineResult perfect = synthetic;
  for (auto& row : perfect.ticks) {
    row.served.gbs = 100;
    row.unserved = 0;
    row.coverage_ratio = 1.0;
  }
  CHECK(resilience_metrics(perfect).unserved_user_hours == 0.0);

  // Independent second pass over the reference run.
  ScenarioConfig sc = default_config().scenario;
  sc.horizon_h = 24.0;
  const TimelineResult run = run_timeline(sc);
  const ResilienceSummary summary = resilience_metrics(run);
  double unserved = 0.0, min_cov = 1.0;
  for (const TickRow& row : run.ticks) {
    unserved += static_cast<double>(row.unserved) * run.dt_h;
    min_cov = std::min(min_cov, row.coverage_ratio);
  }
  CHECK(std::abs(summary.unserved_user_hours - unserved) < 1e-9);
  CHECK(std::abs(summary.min_coverage_ratio - min_cov) < 1e-12);

  CHECK_THROWS_AS(resilience_metrics(TimelineResult{}), std::invalid_argument);
}

TEST_CASE("events must arrive sorted") {
  ScenarioConfig sc = quiet_scenario(4, 400);
  sc.events = {{5.0, EventKind::GridOutage, 0.0, {}},
               {1.0, EventKind::GridRestore, 0.0, {}}};
  CHECK_THROWS_AS(run_timeline(sc), std::invalid_argument);
}
