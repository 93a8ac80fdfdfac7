#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hapsim/config.hpp"
#include "hapsim/errors.hpp"
#include "hapsim/io.hpp"
#include "hapsim/link_budget.hpp"

using namespace hapsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path scratch_dir(const char* leaf) {
  const fs::path dir = fs::temp_directory_path() / "hapsim_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("empty overrides resolve to the shipped defaults") {
  const RunConfig parsed = parse_config("{}", "test");
  CHECK(serialize_config(parsed) == serialize_config(default_config()));
}

TEST_CASE("shipped default.json equals the built-in defaults") {
  const fs::path path = fs::path(HAPSIM_REPO_DIR) / "configs" / "default.json";
  REQUIRE(fs::exists(path));
  CHECK(slurp(path) == serialize_config(default_config()));
  const RunConfig loaded = load_config(path.string());
  CHECK(serialize_config(loaded) == serialize_config(default_config()));
}

TEST_CASE("shipped channel defaults carry the documented tables") {
  const RunConfig cfg = default_config();

  const ElevationTable dense_los = {0.282, 0.331, 0.398, 0.468, 0.537,
                                    0.612, 0.738, 0.820, 0.981};
  const ElevationTable urban_los = {0.246, 0.386, 0.493, 0.613, 0.726,
                                    0.805, 0.919, 0.968, 0.992};
  const ElevationTable suburban_los = {0.782, 0.869, 0.919, 0.929, 0.935,
                                       0.940, 0.949, 0.952, 0.998};
  CHECK(cfg.channel.dense_urban.los_prob == dense_los);
  CHECK(cfg.channel.urban.los_prob == urban_los);
  CHECK(cfg.channel.suburban_rural.los_prob == suburban_los);

  const ElevationTable urban_clutter = {34.3, 30.9, 29.0, 27.7, 26.8,
                                        26.2, 25.8, 25.5, 25.5};
  CHECK(cfg.channel.dense_urban.clutter_nlos_db_s == urban_clutter);
  CHECK(cfg.channel.urban.clutter_nlos_db_s == urban_clutter);
  for (int i = 0; i < kElevationBins; ++i) {
    CHECK(cfg.channel.suburban_rural.clutter_nlos_db_s[i] ==
          doctest::Approx(urban_clutter[i] - 6.0));
  }

  CHECK(cfg.channel.dense_urban.shadow_sigma_los_db_s == 4.0);
  CHECK(cfg.channel.dense_urban.shadow_sigma_nlos_db_s == 10.0);
  CHECK(cfg.channel.suburban_rural.shadow_sigma_los_db_s == 2.0);
  CHECK(cfg.channel.suburban_rural.shadow_sigma_nlos_db_s == 8.0);
  CHECK(cfg.channel.ka_shadow_extra_db == 2.0);
  CHECK(cfg.channel.ka_clutter_extra_db == 10.0);
  CHECK(cfg.channel.zenith_atmos_db_s == 0.07);
  CHECK(cfg.channel.zenith_atmos_db_ka == 0.5);
  CHECK(cfg.channel.min_elevation_deg == 5.0);

  // Terminals, energy plant and scenario defaults.
  CHECK(cfg.terminals.handheld.bandwidth_hz == 10e6);
  CHECK(cfg.terminals.handheld.sensitivity_dbm == -100.0);
  CHECK(cfg.terminals.vsat.dish_diameter_m == 0.6);
  CHECK(cfg.terminals.vsat.sensitivity_dbm == -110.0);
  CHECK(cfg.scenario.site.generator.fuel_hours_remaining == 3.5);
  CHECK(cfg.scenario.site.bess.capacity_kwh == 20.0);
  CHECK(cfg.scenario.site.bess.reserve_soc == 0.1);
  CHECK(cfg.scenario.thresholds.rho_low == 0.1);
  CHECK(cfg.scenario.thresholds.rho_wake == 0.2);
  CHECK(cfg.scenario.thresholds.rho_high == 0.9);
  CHECK(cfg.scenario.haps_ran_capacity_users == 200000);
  CHECK(cfg.region.width_m == 339116.0);
  CHECK(cfg.haps.altitude_m == 20000.0);
}

TEST_CASE("resolve_profile applies the Ka adjustments") {
  const RunConfig cfg = default_config();
  const ChannelProfile s = resolve_profile(cfg.channel, ChannelScenario::Urban, Band::S);
  const ChannelProfile ka =
      resolve_profile(cfg.channel, ChannelScenario::Urban, Band::Ka);
  CHECK(ka.shadow_sigma_los_db == doctest::Approx(s.shadow_sigma_los_db + 2.0));
  CHECK(ka.shadow_sigma_nlos_db == doctest::Approx(s.shadow_sigma_nlos_db + 2.0));
  for (int i = 0; i < kElevationBins; ++i) {
    CHECK(ka.clutter_nlos_db[i] == doctest::Approx(s.clutter_nlos_db[i] + 10.0));
  }
  CHECK(ka.zenith_atmos_db == 0.5);
  CHECK(ka.los_prob == s.los_prob);
}

TEST_CASE("resolve_terminal derives the VSAT gain from its dish") {
  const RunConfig cfg = default_config();
  const TerminalModel vsat = resolve_terminal(cfg, Band::Ka);
  CHECK(vsat.rx_gain_dbi ==
        doctest::Approx(dish_gain(0.6, cfg.frequencies.ka_ghz, 0.6)).epsilon(1e-12));
  const TerminalModel handheld = resolve_terminal(cfg, Band::S);
  CHECK(handheld.rx_gain_dbi == 0.0);
}

TEST_CASE("out-of-range overrides fail with the offending field path") {
  try {
    parse_config(R"({"scenario": {"site": {"bess": {"soc": 1.5}}}})", "test");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "scenario.site.bess.soc");
  }

  CHECK_THROWS_AS(parse_config(R"({"haps": {"altitude_m": 5000.0}})", "test"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"scenario": {"thresholds": {"rho_low": 0.5}}})", "test"),
      ConfigError);
  // A decreasing LoS table violates the monotonicity invariant.
  CHECK_THROWS_AS(
      parse_config(R"({"channel": {"scenarios": {"urban": {
        "los_prob": [0.9, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]}}}})",
                   "test"),
      ConfigError);
}

TEST_CASE("unknown fields and malformed documents are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"regionn": {}})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"region": {"width": 5}})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json", "test"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("partial overrides keep every other default") {
  const RunConfig cfg =
      parse_config(R"({"seed": 9, "haps": {"count": 4}})", "test");
  CHECK(cfg.seed == 9);
  CHECK(cfg.scenario.seed == 9);
  CHECK(cfg.haps.count == 4);
  CHECK(cfg.haps.eirp_dbm_s == default_config().haps.eirp_dbm_s);
  CHECK(cfg.coverage.n_users == default_config().coverage.n_users);
}

TEST_CASE("config round-trips through serialization") {
  const std::string overrides = R"({
    "seed": 77,
    "coverage": {"band": "ka", "scenario": "dense-urban", "force_los": true},
    "scenario": {"events": [
      {"time_h": 0.0, "kind": "grid_outage", "sites": [1, 2]},
      {"time_h": 3.0, "kind": "haps_up", "value": 2}
    ]}
  })";
  const RunConfig first = parse_config(overrides, "test");
  const std::string canonical = serialize_config(first);
  const RunConfig second = parse_config(canonical, "round-trip");
  CHECK(serialize_config(second) == canonical);
  CHECK(second.coverage.force_los.has_value());
  CHECK(*second.coverage.force_los == true);
  REQUIRE(second.scenario.events.size() == 2);
  CHECK(second.scenario.events[0].sites == std::vector<int>{1, 2});
  CHECK(second.scenario.events[1].value == 2.0);
}

TEST_CASE("coverage emission: one row per user, byte-stable, consistent summary") {
  const fs::path dir = scratch_dir("coverage_emit");
  RunConfig cfg = default_config();
  cfg.coverage.n_users = 1;
  CoverageResult result = run_coverage(make_coverage_config(cfg));
  RunMeta meta{"coverage", cfg.seed, Band::S, ChannelScenario::SuburbanRural, 1};

  emit_coverage_results(result, meta, dir);
  const std::string cdf_first = slurp(dir / "cdf.csv");
  const std::string summary_first = slurp(dir / "summary.json");

  // Exactly a header plus one data row.
  CHECK(std::count(cdf_first.begin(), cdf_first.end(), '\n') == 2);

  emit_coverage_results(result, meta, dir);
  CHECK(slurp(dir / "cdf.csv") == cdf_first);
  CHECK(slurp(dir / "summary.json") == summary_first);

  cfg.coverage.n_users = 501;
  result = run_coverage(make_coverage_config(cfg));
  emit_coverage_results(result, meta, dir);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  const double median = summary.at("median_p_rx_dbm").get<double>();

  // Cross-file consistency: the summary median matches the 50th-percentile
  // row of cdf.csv within one sample step.
  std::istringstream cdf_stream(slurp(dir / "cdf.csv"));
  std::string line;
  std::getline(cdf_stream, line);  // header
  double median_row = 0.0;
  while (std::getline(cdf_stream, line)) {
    const auto comma = line.find(',');
    const double value = std::stod(line.substr(0, comma));
    const double fraction = std::stod(line.substr(comma + 1));
    if (fraction >= 0.5) {
      median_row = value;
      break;
    }
  }
  CHECK(std::abs(median - median_row) <= 0.01);  // two-decimal CSV rounding
}

TEST_CASE("timeline emission is byte-stable and carries all four files") {
  const fs::path dir = scratch_dir("timeline_emit");
  ScenarioConfig sc = default_config().scenario;
  sc.horizon_h = 12.0;
  const TimelineResult result = run_timeline(sc);
  const ResilienceSummary summary = resilience_metrics(result);
  RunMeta meta{"disaster", sc.seed, Band::S, ChannelScenario::SuburbanRural, 1};

  const auto files = emit_timeline_results(result, summary, meta, dir);
  REQUIRE(files.size() == 4);
  for (const auto& file : files) {
    REQUIRE(fs::exists(file));
  }
  const std::string timeline_first = slurp(dir / "timeline.csv");
  const std::string ledger_first = slurp(dir / "ledger.csv");
  const std::string decisions_first = slurp(dir / "decisions.csv");
  const std::string summary_first = slurp(dir / "summary.json");

  emit_timeline_results(result, summary, meta, dir);
  CHECK(slurp(dir / "timeline.csv") == timeline_first);
  CHECK(slurp(dir / "ledger.csv") == ledger_first);
  CHECK(slurp(dir / "decisions.csv") == decisions_first);
  CHECK(slurp(dir / "summary.json") == summary_first);

  CHECK(timeline_first.rfind("time_h,coverage_ratio,", 0) == 0);
  CHECK(ledger_first.rfind("time_h,site,source,kwh", 0) == 0);
}
