#include "hapsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include <json.hpp>

namespace hapsim {

using nlohmann::ordered_json;

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF newlines everywhere
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void write_json(const std::filesystem::path& path, const ordered_json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
  }
}

}  // namespace

std::vector<std::filesystem::path> emit_coverage_results(
    const CoverageResult& result, const RunMeta& meta,
    const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::filesystem::path> written;

  const auto cdf_path = out_dir / "cdf.csv";
  {
    auto out = open_out(cdf_path);
    out << "p_rx_dbm,fraction\n";
    for (const CdfPoint& point : result.cdf) {
      out << fixed(point.p_rx_dbm, 2) << "," << fixed(point.fraction, 6) << "\n";
    }
  }
  written.push_back(cdf_path);

  const auto summary_path = out_dir / "summary.json";
  ordered_json summary;
  summary["mode"] = meta.mode;
  summary["band"] = to_string(meta.band);
  summary["scenario"] = to_string(meta.scenario);
  summary["haps_count"] = meta.haps_count;
  summary["seed"] = meta.seed;
  summary["n_users"] = result.n_users;
  summary["median_p_rx_dbm"] = result.median_p_rx_dbm;
  summary["mean_p_rx_dbm"] = result.mean_p_rx_dbm;
  summary["p5_p_rx_dbm"] = result.p5_p_rx_dbm;
  summary["below_sensitivity_fraction"] = result.below_sensitivity_fraction;
  summary["low_elevation_clamps"] = result.low_elevation_clamps;
  write_json(summary_path, summary);
  written.push_back(summary_path);
  return written;
}

std::vector<std::filesystem::path> emit_timeline_results(
    const TimelineResult& result, const ResilienceSummary& summary,
    const RunMeta& meta, const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::filesystem::path> written;

  const auto timeline_path = out_dir / "timeline.csv";
  {
    auto out = open_out(timeline_path);
    out << "time_h,coverage_ratio,active_users,served_gbs,served_haps_ran,"
           "served_haps_backhaul,served_satellite,unserved,mean_soc,haps_active,"
           "satellite_up,sites_destroyed,grid_kwh,res_kwh,generator_kwh,ev_kwh,"
           "bess_discharge_kwh,bess_charge_kwh,load_kwh,curtailed_kwh\n";
    for (const TickRow& row : result.ticks) {
      out << fixed(row.time_h, 2) << "," << fixed(row.coverage_ratio, 6) << ","
          << row.active_users << "," << row.served.gbs << "," << row.served.haps_ran
          << "," << row.served.haps_backhaul << "," << row.served.satellite << ","
          << row.unserved << "," << fixed(row.mean_soc, 6) << "," << row.haps_active
          << "," << (row.satellite_up ? 1 : 0) << "," << row.sites_destroyed << ","
          << fixed(row.energy.grid_kwh, 6) << "," << fixed(row.energy.res_kwh, 6)
          << "," << fixed(row.energy.generator_kwh, 6) << ","
          << fixed(row.energy.ev_kwh, 6) << ","
          << fixed(row.energy.bess_discharge_kwh, 6) << ","
          << fixed(row.energy.bess_charge_kwh, 6) << ","
          << fixed(row.energy.load_kwh, 6) << ","
          << fixed(row.energy.curtailed_kwh, 6) << "\n";
    }
  }
  written.push_back(timeline_path);

  const auto ledger_path = out_dir / "ledger.csv";
  {
    auto out = open_out(ledger_path);
    out << "time_h,site,source,kwh\n";
    for (const LedgerRow& row : result.ledger) {
      out << fixed(row.time_h, 2) << "," << row.site << "," << row.source << ","
          << fixed(row.kwh, 6) << "\n";
    }
  }
  written.push_back(ledger_path);

  const auto decisions_path = out_dir / "decisions.csv";
  {
    auto out = open_out(decisions_path);
    out << "time_h,site,grid_ok,backbone_ok,haps_available,satellite_available,"
           "load,soc,generator_fuel_h,ev_inbound,action\n";
    for (const DecisionRow& row : result.decisions) {
      out << fixed(row.time_h, 2) << "," << row.site << ","
          << (row.status.grid_ok ? 1 : 0) << "," << (row.status.backbone_ok ? 1 : 0)
          << "," << (row.status.haps_available ? 1 : 0) << ","
          << (row.status.satellite_available ? 1 : 0) << ","
          << fixed(row.status.load, 6) << "," << fixed(row.status.soc, 6) << ","
          << fixed(row.status.generator_fuel_h, 6) << ","
          << (row.status.ev_inbound ? 1 : 0) << "," << to_string(row.action) << "\n";
    }
  }
  written.push_back(decisions_path);

  const auto summary_path = out_dir / "summary.json";
  ordered_json doc;
  doc["mode"] = meta.mode;
  doc["seed"] = meta.seed;
  doc["total_users"] = result.total_users;
  doc["dt_h"] = result.dt_h;
  doc["ticks"] = result.ticks.size();
  doc["unserved_user_hours"] = summary.unserved_user_hours;
  doc["min_coverage_ratio"] = summary.min_coverage_ratio;
  doc["final_coverage_ratio"] = summary.final_coverage_ratio;
  if (summary.time_to_full_restoration_h.has_value()) {
    doc["time_to_full_restoration_h"] = *summary.time_to_full_restoration_h;
  } else {
    doc["time_to_full_restoration_h"] = nullptr;
  }
  ordered_json energy;
  for (const auto& [source, kwh] : summary.energy_by_source_kwh) {
    energy[source] = kwh;
  }
  doc["energy_by_source_kwh"] = energy;
  write_json(summary_path, doc);
  written.push_back(summary_path);
  return written;
}

}  // namespace hapsim
