#include "hapsim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hapsim/errors.hpp"
#include "hapsim/link_budget.hpp"

namespace hapsim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

/// Walks one JSON object, tracking consumed keys so typos surface as errors.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw ConfigError(path_, "expected a JSON object");
    }
  }

  bool has(const char* key) {
    if (node_.contains(key)) {
      seen_.insert(key);
      return true;
    }
    return false;
  }

  const json& at(const char* key) { return node_.at(key); }

  std::string sub(const char* key) const { return path_ + "." + key; }

  void read_double(const char* key, double& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number()) throw ConfigError(sub(key), "expected a number");
    out = v.get<double>();
  }

  void read_long(const char* key, long& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) throw ConfigError(sub(key), "expected an integer");
    out = v.get<long>();
  }

  void read_int(const char* key, int& out) {
    long tmp = out;
    read_long(key, tmp);
    out = static_cast<int>(tmp);
  }

  void read_u64(const char* key, std::uint64_t& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (v.is_number_unsigned()) {
      out = v.get<std::uint64_t>();
      return;
    }
    if (v.is_number_integer() && v.get<long long>() >= 0) {
      out = static_cast<std::uint64_t>(v.get<long long>());
      return;
    }
    throw ConfigError(sub(key), "expected a non-negative integer");
  }

  void read_bool(const char* key, bool& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_boolean()) throw ConfigError(sub(key), "expected a boolean");
    out = v.get<bool>();
  }

  void read_string(const char* key, std::string& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError(sub(key), "expected a string");
    out = v.get<std::string>();
  }

  void read_table(const char* key, ElevationTable& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_array() || v.size() != kElevationBins) {
      throw ConfigError(sub(key), "expected an array of " +
                                      std::to_string(kElevationBins) +
                                      " numbers (elevation bins 10..90 deg)");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ConfigError(sub(key) + "[" + std::to_string(i) + "]",
                          "expected a number");
      }
      out[i] = v[i].get<double>();
    }
  }

  /// Call last: complains about any key that was never consumed.
  void finish() const {
    for (const auto& item : node_.items()) {
      if (!seen_.contains(item.key())) {
        throw ConfigError(path_ + "." + item.key(), "unknown field");
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void apply_region(const json& node, const std::string& path, Region& region) {
  ObjectReader r(node, path);
  r.read_double("width_m", region.width_m);
  r.read_double("height_m", region.height_m);
  r.finish();
}

void apply_haps(const json& node, const std::string& path, HapsConfig& haps) {
  ObjectReader r(node, path);
  r.read_int("count", haps.count);
  r.read_double("altitude_m", haps.altitude_m);
  if (r.has("eirp_dbm")) {
    ObjectReader e(r.at("eirp_dbm"), r.sub("eirp_dbm"));
    e.read_double("s", haps.eirp_dbm_s);
    e.read_double("ka", haps.eirp_dbm_ka);
    e.finish();
  }
  r.finish();
}

void apply_frequencies(const json& node, const std::string& path,
                       FrequencyConfig& freq) {
  ObjectReader r(node, path);
  r.read_double("s", freq.s_ghz);
  r.read_double("ka", freq.ka_ghz);
  r.finish();
}

void apply_scenario_tables(const json& node, const std::string& path,
                           ScenarioChannelConfig& tables) {
  ObjectReader r(node, path);
  r.read_table("los_prob", tables.los_prob);
  r.read_table("clutter_nlos_db_s", tables.clutter_nlos_db_s);
  r.read_double("shadow_sigma_los_db_s", tables.shadow_sigma_los_db_s);
  r.read_double("shadow_sigma_nlos_db_s", tables.shadow_sigma_nlos_db_s);
  r.finish();
}

void apply_channel(const json& node, const std::string& path, ChannelConfig& channel) {
  ObjectReader r(node, path);
  r.read_double("min_elevation_deg", channel.min_elevation_deg);
  if (r.has("zenith_atmos_db")) {
    ObjectReader z(r.at("zenith_atmos_db"), r.sub("zenith_atmos_db"));
    z.read_double("s", channel.zenith_atmos_db_s);
    z.read_double("ka", channel.zenith_atmos_db_ka);
    z.finish();
  }
  r.read_double("ka_clutter_extra_db", channel.ka_clutter_extra_db);
  r.read_double("ka_shadow_extra_db", channel.ka_shadow_extra_db);
  if (r.has("scenarios")) {
    ObjectReader s(r.at("scenarios"), r.sub("scenarios"));
    if (s.has("dense-urban")) {
      apply_scenario_tables(s.at("dense-urban"), s.sub("dense-urban"),
                            channel.dense_urban);
    }
    if (s.has("urban")) {
      apply_scenario_tables(s.at("urban"), s.sub("urban"), channel.urban);
    }
    if (s.has("suburban-rural")) {
      apply_scenario_tables(s.at("suburban-rural"), s.sub("suburban-rural"),
                            channel.suburban_rural);
    }
    s.finish();
  }
  r.finish();
}

void apply_terminal(const json& node, const std::string& path, TerminalModel& t,
                    bool dish) {
  ObjectReader r(node, path);
  if (!dish) {
    r.read_double("rx_gain_dbi", t.rx_gain_dbi);
  } else {
    r.read_double("dish_diameter_m", t.dish_diameter_m);
    r.read_double("dish_efficiency", t.dish_efficiency);
  }
  r.read_double("noise_figure_db", t.noise_figure_db);
  r.read_double("bandwidth_hz", t.bandwidth_hz);
  r.read_double("sensitivity_dbm", t.sensitivity_dbm);
  r.finish();
}

void apply_coverage(const json& node, const std::string& path, CoverageSection& cov) {
  ObjectReader r(node, path);
  r.read_long("n_users", cov.n_users);
  if (r.has("band")) {
    std::string band;
    r.read_string("band", band);
    cov.band = band_from_string(band);
  }
  if (r.has("scenario")) {
    std::string scenario;
    r.read_string("scenario", scenario);
    cov.scenario = scenario_from_string(scenario);
  }
  if (r.has("force_los")) {
    const json& v = r.at("force_los");
    if (v.is_null()) {
      cov.force_los.reset();
    } else if (v.is_boolean()) {
      cov.force_los = v.get<bool>();
    } else {
      throw ConfigError(r.sub("force_los"), "expected true, false or null");
    }
  }
  r.read_bool("keep_per_user", cov.keep_per_user);
  r.read_int("n_threads", cov.n_threads);
  r.finish();
}

void apply_site(const json& node, const std::string& path, SiteConfig& site) {
  ObjectReader r(node, path);
  if (r.has("bess")) {
    ObjectReader b(r.at("bess"), r.sub("bess"));
    b.read_double("capacity_kwh", site.bess.capacity_kwh);
    b.read_double("soc", site.bess.soc);
    b.read_double("max_charge_kw", site.bess.max_charge_kw);
    b.read_double("max_discharge_kw", site.bess.max_discharge_kw);
    b.read_double("reserve_soc", site.bess.reserve_soc);
    b.read_double("eta_charge", site.bess.eta_charge);
    b.read_double("eta_discharge", site.bess.eta_discharge);
    b.finish();
  }
  if (r.has("generator")) {
    ObjectReader g(r.at("generator"), r.sub("generator"));
    g.read_double("fuel_hours", site.generator.fuel_hours_remaining);
    g.read_double("output_kw", site.generator.output_kw);
    g.finish();
  }
  if (r.has("res")) {
    ObjectReader g(r.at("res"), r.sub("res"));
    g.read_double("pv_peak_kw", site.res.pv_peak_kw);
    g.read_double("wind_mean_kw", site.res.wind_mean_kw);
    g.read_double("sunrise_h", site.res.sunrise_h);
    g.read_double("sunset_h", site.res.sunset_h);
    g.finish();
  }
  if (r.has("ev")) {
    ObjectReader g(r.at("ev"), r.sub("ev"));
    g.read_double("travel_time_h", site.ev.travel_time_h);
    g.read_double("deliverable_kwh", site.ev.deliverable_kwh);
    g.read_double("delivery_rate_kw", site.ev.delivery_rate_kw);
    g.finish();
  }
  r.read_double("active_load_kw", site.active_load_kw);
  r.read_double("idle_load_kw", site.idle_load_kw);
  r.finish();
}

void apply_events(const json& node, const std::string& path,
                  std::vector<ScenarioEvent>& events) {
  if (!node.is_array()) {
    throw ConfigError(path, "expected an array of events");
  }
  events.clear();
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string epath = path + "[" + std::to_string(i) + "]";
    ObjectReader r(node[i], epath);
    ScenarioEvent event;
    r.read_double("time_h", event.time_h);
    std::string kind;
    r.read_string("kind", kind);
    if (kind.empty()) throw ConfigError(epath + ".kind", "event kind is required");
    event.kind = event_kind_from_string(kind);
    if (event.kind == EventKind::HapsUp) event.value = 1.0;
    r.read_double("value", event.value);
    if (r.has("sites")) {
      const json& s = r.at("sites");
      if (!s.is_array()) throw ConfigError(epath + ".sites", "expected an array");
      for (const auto& id : s) {
        if (!id.is_number_integer()) {
          throw ConfigError(epath + ".sites", "site ids must be integers");
        }
        event.sites.push_back(id.get<int>());
      }
    }
    r.finish();
    events.push_back(std::move(event));
  }
}

void apply_scenario(const json& node, const std::string& path, ScenarioConfig& sc) {
  ObjectReader r(node, path);
  r.read_int("n_sites", sc.n_sites);
  r.read_long("total_users", sc.total_users);
  r.read_double("horizon_h", sc.horizon_h);
  r.read_double("dt_h", sc.dt_h);
  r.read_double("start_hour_of_day", sc.start_hour_of_day);
  if (r.has("policy")) {
    std::string mode;
    r.read_string("policy", mode);
    sc.policy = policy_mode_from_string(mode);
  }
  r.read_long("haps_ran_capacity_users", sc.haps_ran_capacity_users);
  r.read_double("satellite_capacity_fraction", sc.satellite_capacity_fraction);
  r.read_int("initial_haps", sc.initial_haps);
  r.read_bool("initial_satellite", sc.initial_satellite);
  if (r.has("thresholds")) {
    ObjectReader t(r.at("thresholds"), r.sub("thresholds"));
    t.read_double("rho_low", sc.thresholds.rho_low);
    t.read_double("rho_wake", sc.thresholds.rho_wake);
    t.read_double("rho_high", sc.thresholds.rho_high);
    t.finish();
  }
  if (r.has("traffic")) {
    ObjectReader t(r.at("traffic"), r.sub("traffic"));
    t.read_double("trough", sc.traffic.trough);
    t.read_double("peak", sc.traffic.peak);
    t.finish();
  }
  if (r.has("site")) {
    apply_site(r.at("site"), r.sub("site"), sc.site);
  }
  if (r.has("events")) {
    apply_events(r.at("events"), r.sub("events"), sc.events);
  }
  r.finish();
}

void check(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

const ScenarioChannelConfig& ChannelConfig::tables_for(ChannelScenario scenario) const {
  switch (scenario) {
    case ChannelScenario::DenseUrban: return dense_urban;
    case ChannelScenario::Urban: return urban;
    case ChannelScenario::SuburbanRural: return suburban_rural;
  }
  return suburban_rural;
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.seed = 1;
  cfg.region = Region{339116.0, 339116.0};
  cfg.haps = HapsConfig{1, 20000.0, 86.0, 90.0};
  cfg.frequencies = FrequencyConfig{2.0, 20.0};

  cfg.channel.min_elevation_deg = 5.0;
  cfg.channel.zenith_atmos_db_s = 0.07;
  cfg.channel.zenith_atmos_db_ka = 0.5;
  cfg.channel.ka_clutter_extra_db = 10.0;
  cfg.channel.ka_shadow_extra_db = 2.0;

  const ElevationTable urban_clutter = {34.3, 30.9, 29.0, 27.7, 26.8,
                                        26.2, 25.8, 25.5, 25.5};
  cfg.channel.dense_urban = ScenarioChannelConfig{
      {0.282, 0.331, 0.398, 0.468, 0.537, 0.612, 0.738, 0.820, 0.981},
      urban_clutter,
      4.0,
      10.0,
  };
  cfg.channel.urban = ScenarioChannelConfig{
      {0.246, 0.386, 0.493, 0.613, 0.726, 0.805, 0.919, 0.968, 0.992},
      urban_clutter,
      4.0,
      10.0,
  };
  // Urban clutter minus 6 dB, written out so the shipped file carries clean
  // literals.
  cfg.channel.suburban_rural = ScenarioChannelConfig{
      {0.782, 0.869, 0.919, 0.929, 0.935, 0.940, 0.949, 0.952, 0.998},
      {28.3, 24.9, 23.0, 21.7, 20.8, 20.2, 19.8, 19.5, 19.5},
      2.0,
      8.0,
  };

  cfg.terminals.handheld = TerminalModel{Band::S, 0.0, 7.0, 10e6, -100.0, 0.0, 0.0};
  cfg.terminals.vsat = TerminalModel{Band::Ka, 0.0, 2.0, 50e6, -110.0, 0.6, 0.6};

  cfg.coverage = CoverageSection{};
  cfg.scenario = ScenarioConfig{};
  cfg.scenario.events = {
      {0.0, EventKind::BsFailFraction, 0.25, {}},
      {0.0, EventKind::GridOutage, 0.0, {}},
      {6.0, EventKind::HapsUp, 1.0, {}},
      {24.0, EventKind::FuelDelivery, 3.5, {}},
      {36.0, EventKind::BsFailFraction, 0.5, {}},
  };
  cfg.scenario.seed = cfg.seed;
  return cfg;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(origin, std::string("JSON parse error: ") + err.what());
  }

  RunConfig cfg = default_config();
  ObjectReader r(doc, origin);
  r.read_u64("seed", cfg.seed);
  if (r.has("region")) apply_region(r.at("region"), origin + ".region", cfg.region);
  if (r.has("haps")) apply_haps(r.at("haps"), origin + ".haps", cfg.haps);
  if (r.has("frequencies_ghz")) {
    apply_frequencies(r.at("frequencies_ghz"), origin + ".frequencies_ghz",
                      cfg.frequencies);
  }
  if (r.has("channel")) apply_channel(r.at("channel"), origin + ".channel", cfg.channel);
  if (r.has("terminals")) {
    ObjectReader t(r.at("terminals"), origin + ".terminals");
    if (t.has("handheld")) {
      apply_terminal(t.at("handheld"), t.sub("handheld"), cfg.terminals.handheld, false);
    }
    if (t.has("vsat")) {
      apply_terminal(t.at("vsat"), t.sub("vsat"), cfg.terminals.vsat, true);
    }
    t.finish();
  }
  if (r.has("coverage")) {
    apply_coverage(r.at("coverage"), origin + ".coverage", cfg.coverage);
  }
  if (r.has("scenario")) {
    apply_scenario(r.at("scenario"), origin + ".scenario", cfg.scenario);
  }
  r.finish();

  cfg.scenario.seed = cfg.seed;
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(path, "cannot open configuration file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

void validate_config(const RunConfig& cfg) {
  check(cfg.region.width_m > 0.0, "region.width_m", "must be > 0");
  check(cfg.region.height_m > 0.0, "region.height_m", "must be > 0");

  check(cfg.haps.count >= 1, "haps.count", "must be >= 1");
  check(cfg.haps.altitude_m >= 17000.0 && cfg.haps.altitude_m <= 25000.0,
        "haps.altitude_m", "stratospheric platforms sit in [17000, 25000] m");

  check(cfg.frequencies.s_ghz > 0.0, "frequencies_ghz.s", "must be > 0");
  check(cfg.frequencies.ka_ghz > 0.0, "frequencies_ghz.ka", "must be > 0");

  check(cfg.channel.ka_clutter_extra_db >= 0.0, "channel.ka_clutter_extra_db",
        "must be >= 0");
  check(cfg.channel.ka_shadow_extra_db >= 0.0, "channel.ka_shadow_extra_db",
        "must be >= 0");
  for (const auto scenario : {ChannelScenario::DenseUrban, ChannelScenario::Urban,
                              ChannelScenario::SuburbanRural}) {
    for (const auto band : {Band::S, Band::Ka}) {
      resolve_profile(cfg.channel, scenario, band)
          .validate(std::string("channel.scenarios.") + to_string(scenario) +
                    " (band " + to_string(band) + ")");
    }
  }

  const auto check_terminal = [](const TerminalModel& t, const std::string& field,
                                 bool dish) {
    check(t.bandwidth_hz > 0.0, field + ".bandwidth_hz", "must be > 0");
    check(t.sensitivity_dbm < 0.0, field + ".sensitivity_dbm", "must be < 0 dBm");
    check(t.noise_figure_db >= 0.0, field + ".noise_figure_db", "must be >= 0");
    if (dish) {
      check(t.dish_diameter_m > 0.0, field + ".dish_diameter_m", "must be > 0");
      check(t.dish_efficiency > 0.0 && t.dish_efficiency <= 1.0,
            field + ".dish_efficiency", "must be in (0, 1]");
    }
  };
  check_terminal(cfg.terminals.handheld, "terminals.handheld", false);
  check_terminal(cfg.terminals.vsat, "terminals.vsat", true);

  check(cfg.coverage.n_users >= 1, "coverage.n_users", "must be >= 1");
  check(cfg.coverage.n_threads >= 0, "coverage.n_threads", "must be >= 0");

  const ScenarioConfig& sc = cfg.scenario;
  check(sc.n_sites >= 1, "scenario.n_sites", "must be >= 1");
  check(sc.total_users >= 1, "scenario.total_users", "must be >= 1");
  check(sc.horizon_h > 0.0, "scenario.horizon_h", "must be > 0");
  check(sc.dt_h > 0.0 && sc.dt_h <= sc.horizon_h, "scenario.dt_h",
        "must be in (0, horizon_h]");
  check(sc.start_hour_of_day >= 0.0 && sc.start_hour_of_day < 24.0,
        "scenario.start_hour_of_day", "must be in [0, 24)");
  sc.thresholds.validate("scenario.thresholds");
  check(sc.traffic.trough >= 0.0 && sc.traffic.peak <= 1.5 &&
            sc.traffic.trough <= sc.traffic.peak,
        "scenario.traffic", "need 0 <= trough <= peak <= 1.5");
  check(sc.haps_ran_capacity_users >= 0, "scenario.haps_ran_capacity_users",
        "must be >= 0");
  check(sc.satellite_capacity_fraction >= 0.0 && sc.satellite_capacity_fraction <= 1.0,
        "scenario.satellite_capacity_fraction", "must be in [0, 1]");
  check(sc.initial_haps >= 0, "scenario.initial_haps", "must be >= 0");

  const BessState& bess = sc.site.bess;
  check(bess.capacity_kwh > 0.0, "scenario.site.bess.capacity_kwh", "must be > 0");
  check(bess.soc >= 0.0 && bess.soc <= 1.0, "scenario.site.bess.soc",
        "must be in [0, 1]");
  check(bess.reserve_soc >= 0.0 && bess.reserve_soc < 1.0,
        "scenario.site.bess.reserve_soc", "must be in [0, 1)");
  check(bess.max_charge_kw >= 0.0, "scenario.site.bess.max_charge_kw", "must be >= 0");
  check(bess.max_discharge_kw >= 0.0, "scenario.site.bess.max_discharge_kw",
        "must be >= 0");
  check(bess.eta_charge > 0.0 && bess.eta_charge <= 1.0,
        "scenario.site.bess.eta_charge", "must be in (0, 1]");
  check(bess.eta_discharge > 0.0 && bess.eta_discharge <= 1.0,
        "scenario.site.bess.eta_discharge", "must be in (0, 1]");

  check(sc.site.generator.fuel_hours_remaining >= 0.0,
        "scenario.site.generator.fuel_hours", "must be >= 0");
  check(sc.site.generator.output_kw >= 0.0, "scenario.site.generator.output_kw",
        "must be >= 0");

  const ResProfile& res = sc.site.res;
  check(res.pv_peak_kw >= 0.0, "scenario.site.res.pv_peak_kw", "must be >= 0");
  check(res.wind_mean_kw >= 0.0, "scenario.site.res.wind_mean_kw", "must be >= 0");
  check(res.sunrise_h < res.sunset_h, "scenario.site.res.sunrise_h",
        "sunrise must precede sunset");

  check(sc.site.ev.travel_time_h >= 0.0, "scenario.site.ev.travel_time_h",
        "must be >= 0");
  check(sc.site.ev.deliverable_kwh >= 0.0, "scenario.site.ev.deliverable_kwh",
        "must be >= 0");
  check(sc.site.ev.delivery_rate_kw >= 0.0, "scenario.site.ev.delivery_rate_kw",
        "must be >= 0");
  check(sc.site.active_load_kw >= 0.0, "scenario.site.active_load_kw", "must be >= 0");
  check(sc.site.idle_load_kw >= 0.0, "scenario.site.idle_load_kw", "must be >= 0");

  for (std::size_t i = 0; i < sc.events.size(); ++i) {
    const ScenarioEvent& event = sc.events[i];
    const std::string field = "scenario.events[" + std::to_string(i) + "]";
    check(event.time_h >= 0.0, field + ".time_h", "must be >= 0");
    if (i > 0) {
      check(event.time_h >= sc.events[i - 1].time_h, field + ".time_h",
            "events must be sorted by time");
    }
    if (event.kind == EventKind::BsFailFraction) {
      check(event.value >= 0.0 && event.value <= 1.0, field + ".value",
            "fraction must be in [0, 1]");
    }
    if (event.kind == EventKind::FuelDelivery || event.kind == EventKind::HapsUp ||
        event.kind == EventKind::HapsDown) {
      check(event.value >= 0.0, field + ".value", "must be >= 0");
    }
    for (int id : event.sites) {
      check(id >= 0 && id < sc.n_sites, field + ".sites",
            "unknown site id " + std::to_string(id));
    }
  }
}

ChannelProfile resolve_profile(const ChannelConfig& channel, ChannelScenario scenario,
                               Band band) {
  const ScenarioChannelConfig& tables = channel.tables_for(scenario);
  ChannelProfile profile;
  profile.los_prob = tables.los_prob;
  profile.clutter_nlos_db = tables.clutter_nlos_db_s;
  profile.shadow_sigma_los_db = tables.shadow_sigma_los_db_s;
  profile.shadow_sigma_nlos_db = tables.shadow_sigma_nlos_db_s;
  profile.zenith_atmos_db = channel.zenith_atmos_db_s;
  profile.min_elevation_deg = channel.min_elevation_deg;
  if (band == Band::Ka) {
    for (double& c : profile.clutter_nlos_db) c += channel.ka_clutter_extra_db;
    profile.shadow_sigma_los_db += channel.ka_shadow_extra_db;
    profile.shadow_sigma_nlos_db += channel.ka_shadow_extra_db;
    profile.zenith_atmos_db = channel.zenith_atmos_db_ka;
  }
  return profile;
}

TerminalModel resolve_terminal(const RunConfig& config, Band band) {
  if (band == Band::S) {
    TerminalModel t = config.terminals.handheld;
    t.band = Band::S;
    return t;
  }
  TerminalModel t = config.terminals.vsat;
  t.band = Band::Ka;
  t.rx_gain_dbi =
      dish_gain(t.dish_diameter_m, config.frequencies.ka_ghz, t.dish_efficiency);
  return t;
}

double eirp_for(const HapsConfig& haps, Band band) {
  return band == Band::S ? haps.eirp_dbm_s : haps.eirp_dbm_ka;
}

double frequency_for(const FrequencyConfig& frequencies, Band band) {
  return band == Band::S ? frequencies.s_ghz : frequencies.ka_ghz;
}

CoverageConfig make_coverage_config(const RunConfig& config) {
  CoverageConfig cov;
  cov.region = config.region;
  cov.haps_count = config.haps.count;
  cov.haps_altitude_m = config.haps.altitude_m;
  cov.band = config.coverage.band;
  cov.scenario = config.coverage.scenario;
  cov.n_users = config.coverage.n_users;
  cov.seed = config.seed;
  cov.terminal = resolve_terminal(config, cov.band);
  cov.profile = resolve_profile(config.channel, cov.scenario, cov.band);
  cov.eirp_dbm = eirp_for(config.haps, cov.band);
  cov.freq_ghz = frequency_for(config.frequencies, cov.band);
  cov.force_los = config.coverage.force_los;
  cov.keep_per_user = config.coverage.keep_per_user;
  cov.n_threads = config.coverage.n_threads;
  return cov;
}

std::string serialize_config(const RunConfig& cfg) {
  ordered_json doc;
  doc["seed"] = cfg.seed;
  doc["region"] = {{"width_m", cfg.region.width_m}, {"height_m", cfg.region.height_m}};
  doc["haps"] = {
      {"count", cfg.haps.count},
      {"altitude_m", cfg.haps.altitude_m},
      {"eirp_dbm", {{"s", cfg.haps.eirp_dbm_s}, {"ka", cfg.haps.eirp_dbm_ka}}},
  };
  doc["frequencies_ghz"] = {{"s", cfg.frequencies.s_ghz}, {"ka", cfg.frequencies.ka_ghz}};

  const auto scenario_tables = [](const ScenarioChannelConfig& tables) {
    return ordered_json{
        {"los_prob", tables.los_prob},
        {"clutter_nlos_db_s", tables.clutter_nlos_db_s},
        {"shadow_sigma_los_db_s", tables.shadow_sigma_los_db_s},
        {"shadow_sigma_nlos_db_s", tables.shadow_sigma_nlos_db_s},
    };
  };
  doc["channel"] = {
      {"min_elevation_deg", cfg.channel.min_elevation_deg},
      {"zenith_atmos_db",
       {{"s", cfg.channel.zenith_atmos_db_s}, {"ka", cfg.channel.zenith_atmos_db_ka}}},
      {"ka_clutter_extra_db", cfg.channel.ka_clutter_extra_db},
      {"ka_shadow_extra_db", cfg.channel.ka_shadow_extra_db},
      {"scenarios",
       {{"dense-urban", scenario_tables(cfg.channel.dense_urban)},
        {"urban", scenario_tables(cfg.channel.urban)},
        {"suburban-rural", scenario_tables(cfg.channel.suburban_rural)}}},
  };

  doc["terminals"] = {
      {"handheld",
       {{"rx_gain_dbi", cfg.terminals.handheld.rx_gain_dbi},
        {"noise_figure_db", cfg.terminals.handheld.noise_figure_db},
        {"bandwidth_hz", cfg.terminals.handheld.bandwidth_hz},
        {"sensitivity_dbm", cfg.terminals.handheld.sensitivity_dbm}}},
      {"vsat",
       {{"dish_diameter_m", cfg.terminals.vsat.dish_diameter_m},
        {"dish_efficiency", cfg.terminals.vsat.dish_efficiency},
        {"noise_figure_db", cfg.terminals.vsat.noise_figure_db},
        {"bandwidth_hz", cfg.terminals.vsat.bandwidth_hz},
        {"sensitivity_dbm", cfg.terminals.vsat.sensitivity_dbm}}},
  };

  ordered_json coverage;
  coverage["n_users"] = cfg.coverage.n_users;
  coverage["band"] = to_string(cfg.coverage.band);
  coverage["scenario"] = to_string(cfg.coverage.scenario);
  if (cfg.coverage.force_los.has_value()) {
    coverage["force_los"] = *cfg.coverage.force_los;
  } else {
    coverage["force_los"] = nullptr;
  }
  coverage["keep_per_user"] = cfg.coverage.keep_per_user;
  coverage["n_threads"] = cfg.coverage.n_threads;
  doc["coverage"] = coverage;

  ordered_json events = ordered_json::array();
  for (const ScenarioEvent& event : cfg.scenario.events) {
    ordered_json e;
    e["time_h"] = event.time_h;
    e["kind"] = to_string(event.kind);
    e["value"] = event.value;
    e["sites"] = event.sites;
    events.push_back(e);
  }
  doc["scenario"] = {
      {"n_sites", cfg.scenario.n_sites},
      {"total_users", cfg.scenario.total_users},
      {"horizon_h", cfg.scenario.horizon_h},
      {"dt_h", cfg.scenario.dt_h},
      {"start_hour_of_day", cfg.scenario.start_hour_of_day},
      {"policy", to_string(cfg.scenario.policy)},
      {"haps_ran_capacity_users", cfg.scenario.haps_ran_capacity_users},
      {"satellite_capacity_fraction", cfg.scenario.satellite_capacity_fraction},
      {"initial_haps", cfg.scenario.initial_haps},
      {"initial_satellite", cfg.scenario.initial_satellite},
      {"thresholds",
       {{"rho_low", cfg.scenario.thresholds.rho_low},
        {"rho_wake", cfg.scenario.thresholds.rho_wake},
        {"rho_high", cfg.scenario.thresholds.rho_high}}},
      {"traffic",
       {{"trough", cfg.scenario.traffic.trough}, {"peak", cfg.scenario.traffic.peak}}},
      {"site",
       {{"bess",
         {{"capacity_kwh", cfg.scenario.site.bess.capacity_kwh},
          {"soc", cfg.scenario.site.bess.soc},
          {"max_charge_kw", cfg.scenario.site.bess.max_charge_kw},
          {"max_discharge_kw", cfg.scenario.site.bess.max_discharge_kw},
          {"reserve_soc", cfg.scenario.site.bess.reserve_soc},
          {"eta_charge", cfg.scenario.site.bess.eta_charge},
          {"eta_discharge", cfg.scenario.site.bess.eta_discharge}}},
        {"generator",
         {{"fuel_hours", cfg.scenario.site.generator.fuel_hours_remaining},
          {"output_kw", cfg.scenario.site.generator.output_kw}}},
        {"res",
         {{"pv_peak_kw", cfg.scenario.site.res.pv_peak_kw},
          {"wind_mean_kw", cfg.scenario.site.res.wind_mean_kw},
          {"sunrise_h", cfg.scenario.site.res.sunrise_h},
          {"sunset_h", cfg.scenario.site.res.sunset_h}}},
        {"ev",
         {{"travel_time_h", cfg.scenario.site.ev.travel_time_h},
          {"deliverable_kwh", cfg.scenario.site.ev.deliverable_kwh},
          {"delivery_rate_kw", cfg.scenario.site.ev.delivery_rate_kw}}},
        {"active_load_kw", cfg.scenario.site.active_load_kw},
        {"idle_load_kw", cfg.scenario.site.idle_load_kw}}},
      {"events", events},
  };

  return doc.dump(2) + "\n";
}

}  // namespace hapsim
