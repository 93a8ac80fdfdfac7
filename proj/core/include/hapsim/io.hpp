#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hapsim/config.hpp"
#include "hapsim/coverage.hpp"
#include "hapsim/scenario.hpp"

namespace hapsim {

/// Run identity echoed into summary.json so outputs are self-describing.
struct RunMeta {
  std::string mode;  // coverage | predisaster | disaster
  std::uint64_t seed = 0;
  Band band = Band::S;
  ChannelScenario scenario = ChannelScenario::SuburbanRural;
  int haps_count = 0;
};

/// Write cdf.csv + summary.json for a coverage run. Deterministic: stable
/// column order, LF newlines, dBm with two decimals, fractions with six.
/// Returns the paths written.
std::vector<std::filesystem::path> emit_coverage_results(
    const CoverageResult& result, const RunMeta& meta,
    const std::filesystem::path& out_dir);

/// Write timeline.csv + ledger.csv + decisions.csv + summary.json for a
/// timeline run.
std::vector<std::filesystem::path> emit_timeline_results(
    const TimelineResult& result, const ResilienceSummary& summary,
    const RunMeta& meta, const std::filesystem::path& out_dir);

}  // namespace hapsim
