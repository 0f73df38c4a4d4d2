#pragma once

#include "abcem/config.hpp"
#include "abcem/engine.hpp"

#include <filesystem>
#include <vector>

namespace abcem {

struct BatchOptions {
    int runs = 1;
    int jobs = 1;
    std::filesystem::path out_dir = "out";
    bool write_runs = true;
};

struct BatchResult {
    MonteCarloResult mc;
    std::vector<std::filesystem::path> run_files;
    std::filesystem::path aggregate_file;
};

/// Monte-Carlo batch with file output: <out>/<name>/run<idx>.csv per run and
/// <out>/<name>/aggregate.csv. Workers never share output files, so any jobs
/// level produces byte-identical results.
BatchResult run_batch(const SimulationConfig& config, const BatchOptions& options);

/// Resolves --config arguments: an existing file is parsed, otherwise the
/// name must be a bundled preset.
SimulationConfig load_config(const std::string& path_or_preset);

} // namespace abcem
