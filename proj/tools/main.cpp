// hapsim: HAPS-assisted disaster-resilience co-simulator.
//
// Subcommands:
//   coverage     received-power CDF of ground users under a HAPS fleet
//   predisaster  methodology-1 timeline (sleep/offload sustainability policy)
//   disaster     methodology-2 timeline (failover policy over a disaster script)
//   validate     parse + validate a configuration file
//   defaults     print the shipped default configuration
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hapsim/config.hpp"
#include "hapsim/coverage.hpp"
#include "hapsim/errors.hpp"
#include "hapsim/io.hpp"
#include "hapsim/scenario.hpp"

namespace {

constexpr const char* kConfigEnvVar = "HAPSIM_CONFIG";

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
};

std::string effective_config_path(const CommonOptions& options) {
  if (!options.config_path.empty()) return options.config_path;
  if (const char* env = std::getenv(kConfigEnvVar)) return env;
  return {};
}

hapsim::RunConfig load_effective_config(const CommonOptions& options) {
  const std::string path = effective_config_path(options);
  hapsim::RunConfig cfg =
      path.empty() ? hapsim::default_config() : hapsim::load_config(path);
  if (options.seed.has_value()) {
    cfg.seed = *options.seed;
    cfg.scenario.seed = *options.seed;
  }
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& options, bool with_out = true) {
  cmd->add_option("--config", options.config_path,
                  "Configuration file (JSON); defaults to $" +
                      std::string(kConfigEnvVar) + " or shipped defaults");
  cmd->add_option("--seed", options.seed, "Override the run seed");
  if (with_out) {
    cmd->add_option("--out", options.out_dir, "Output directory")
        ->capture_default_str();
  }
}

int run_coverage_cmd(const CommonOptions& options, std::optional<long> users,
                     std::optional<int> haps, const std::string& band,
                     const std::string& scenario) {
  hapsim::RunConfig cfg = load_effective_config(options);
  if (users.has_value()) cfg.coverage.n_users = *users;
  if (haps.has_value()) cfg.haps.count = *haps;
  if (!band.empty()) cfg.coverage.band = hapsim::band_from_string(band);
  if (!scenario.empty()) {
    cfg.coverage.scenario = hapsim::scenario_from_string(scenario);
  }
  hapsim::validate_config(cfg);

  const hapsim::CoverageConfig cov = hapsim::make_coverage_config(cfg);
  const hapsim::CoverageResult result = hapsim::run_coverage(cov);

  hapsim::RunMeta meta{"coverage", cfg.seed, cov.band, cov.scenario, cov.haps_count};
  const auto files =
      hapsim::emit_coverage_results(result, meta, options.out_dir);

  std::printf(
      "coverage: users=%ld haps=%d band=%s scenario=%s\n"
      "  median_p_rx_dbm=%.2f p5_p_rx_dbm=%.2f below_sensitivity_fraction=%.6f\n",
      result.n_users, cov.haps_count, hapsim::to_string(cov.band),
      hapsim::to_string(cov.scenario), result.median_p_rx_dbm, result.p5_p_rx_dbm,
      result.below_sensitivity_fraction);
  for (const auto& file : files) {
    std::printf("  wrote %s\n", file.string().c_str());
  }
  return 0;
}

int run_timeline_cmd(const CommonOptions& options, const std::string& mode,
                     std::optional<int> haps, const std::string& policy,
                     std::optional<double> horizon) {
  hapsim::RunConfig cfg = load_effective_config(options);

  if (mode == "predisaster") {
    cfg.scenario.policy = hapsim::PolicyMode::PreDisaster;
    cfg.scenario.events.clear();  // methodology 1 runs before any disaster
    cfg.scenario.initial_haps = haps.value_or(1);
  } else {
    cfg.scenario.policy = hapsim::PolicyMode::InDisaster;
    if (!policy.empty()) {
      cfg.scenario.policy = hapsim::policy_mode_from_string(policy);
    }
    if (haps.has_value()) {
      if (*haps == 0) {
        // Strip the fleet entirely.
        std::erase_if(cfg.scenario.events, [](const hapsim::ScenarioEvent& e) {
          return e.kind == hapsim::EventKind::HapsUp ||
                 e.kind == hapsim::EventKind::HapsDown;
        });
        cfg.scenario.initial_haps = 0;
      } else {
        bool has_up = false;
        for (auto& event : cfg.scenario.events) {
          if (event.kind == hapsim::EventKind::HapsUp) {
            event.value = *haps;
            has_up = true;
          }
        }
        if (!has_up) cfg.scenario.initial_haps = *haps;
      }
    }
  }
  if (horizon.has_value()) cfg.scenario.horizon_h = *horizon;
  hapsim::validate_config(cfg);

  const hapsim::TimelineResult result = hapsim::run_timeline(cfg.scenario);
  const hapsim::ResilienceSummary summary = hapsim::resilience_metrics(result);

  hapsim::RunMeta meta{mode, cfg.seed, hapsim::Band::S,
                       hapsim::ChannelScenario::SuburbanRural,
                       cfg.scenario.initial_haps};
  const auto files = hapsim::emit_timeline_results(result, summary, meta,
                                                   options.out_dir);

  std::printf("%s: sites=%d users=%ld horizon=%.1fh dt=%.2fh policy=%s\n",
              mode.c_str(), cfg.scenario.n_sites, cfg.scenario.total_users,
              cfg.scenario.horizon_h, cfg.scenario.dt_h,
              hapsim::to_string(cfg.scenario.policy));
  std::printf("  min_coverage=%.4f final_coverage=%.4f unserved_user_hours=%.1f\n",
              summary.min_coverage_ratio, summary.final_coverage_ratio,
              summary.unserved_user_hours);
  if (summary.time_to_full_restoration_h.has_value()) {
    std::printf("  full_restoration_at=%.2fh\n",
                *summary.time_to_full_restoration_h);
  }
  for (const auto& file : files) {
    std::printf("  wrote %s\n", file.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HAPS-assisted disaster-resilience network co-simulator"};
  app.require_subcommand(1);

  // coverage
  CommonOptions cov_opts;
  std::optional<long> cov_users;
  std::optional<int> cov_haps;
  std::string cov_band;
  std::string cov_scenario;
  auto* cov = app.add_subcommand("coverage",
                                 "Received-power CDF at ground users");
  add_common(cov, cov_opts);
  cov->add_option("--users", cov_users, "Number of sampled users");
  cov->add_option("--haps", cov_haps, "HAPS count (1, 2, 4, ...)");
  cov->add_option("--band", cov_band, "Band: s or ka")
      ->check(CLI::IsMember({"s", "ka"}));
  cov->add_option("--scenario", cov_scenario,
                  "Channel scenario: dense-urban, urban, suburban-rural")
      ->check(CLI::IsMember({"dense-urban", "urban", "suburban-rural"}));

  // predisaster
  CommonOptions pre_opts;
  std::optional<int> pre_haps;
  std::optional<double> pre_horizon;
  auto* pre = app.add_subcommand(
      "predisaster", "Methodology-1 sustainability timeline (no disaster events)");
  add_common(pre, pre_opts);
  pre->add_option("--haps", pre_haps, "Available HAPS fleet size (default 1)");
  pre->add_option("--horizon", pre_horizon, "Horizon in hours");

  // disaster
  CommonOptions dis_opts;
  std::optional<int> dis_haps;
  std::string dis_policy;
  std::optional<double> dis_horizon;
  auto* dis = app.add_subcommand(
      "disaster", "Methodology-2 resiliency timeline over the scenario events");
  add_common(dis, dis_opts);
  dis->add_option("--haps", dis_haps,
                  "Override fleet size brought up by haps_up events; 0 removes "
                  "the fleet");
  dis->add_option("--policy", dis_policy, "Policy mode: indisaster or none")
      ->check(CLI::IsMember({"indisaster", "predisaster", "none"}));
  dis->add_option("--horizon", dis_horizon, "Horizon in hours");

  // validate
  CommonOptions val_opts;
  auto* val = app.add_subcommand("validate", "Check a configuration file");
  add_common(val, val_opts, /*with_out=*/false);

  // defaults
  auto* def = app.add_subcommand("defaults",
                                 "Print the shipped default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cov->parsed()) {
      return run_coverage_cmd(cov_opts, cov_users, cov_haps, cov_band, cov_scenario);
    }
    if (pre->parsed()) {
      return run_timeline_cmd(pre_opts, "predisaster", pre_haps, "", pre_horizon);
    }
    if (dis->parsed()) {
      return run_timeline_cmd(dis_opts, "disaster", dis_haps, dis_policy,
                              dis_horizon);
    }
    if (val->parsed()) {
      hapsim::RunConfig cfg = load_effective_config(val_opts);
      (void)cfg;
      const std::string path = effective_config_path(val_opts);
      std::printf("OK: %s\n", path.empty() ? "(shipped defaults)" : path.c_str());
      return 0;
    }
    if (def->parsed()) {
      std::fputs(hapsim::serialize_config(hapsim::default_config()).c_str(), stdout);
      return 0;
    }
  } catch (const hapsim::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
