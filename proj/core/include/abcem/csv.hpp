#pragma once

#include "abcem/engine.hpp"
#include "abcem/record.hpp"

#include <filesystem>
#include <string>

namespace abcem {

/// Writes header + one row per step. Numbers use the shortest decimal form
/// that round-trips 64-bit floats, so re-reading reproduces values exactly.
void write_csv(const TimeSeriesRecord& record, const std::filesystem::path& path);

TimeSeriesRecord read_csv(const std::filesystem::path& path);

/// Per-run stats rows followed by one mean row (run = -1).
void write_aggregate_csv(const MonteCarloResult& result, const std::filesystem::path& path);

/// Long-format "name,value" stats file plus a QQ-pairs file, as produced by
/// the analyze subcommand.
void write_stats_csv(const StatsReport& report, const std::filesystem::path& path);
void write_qq_csv(const StatsReport& report, const std::filesystem::path& path);

} // namespace abcem
