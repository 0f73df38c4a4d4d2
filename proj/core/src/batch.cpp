#include "abcem/batch.hpp"

#include "abcem/config_text.hpp"
#include "abcem/csv.hpp"
#include "abcem/errors.hpp"
#include "abcem/presets.hpp"

#include <fstream>
#include <sstream>

namespace abcem {

BatchResult run_batch(const SimulationConfig& config, const BatchOptions& options) {
    BatchResult result;
    const std::filesystem::path dir = options.out_dir / config.name;
    result.run_files.resize(static_cast<std::size_t>(options.runs));

    std::function<void(int, const TimeSeriesRecord&)> sink;
    if (options.write_runs) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        sink = [&](int run, const TimeSeriesRecord& record) {
            const std::filesystem::path file = dir / ("run" + std::to_string(run) + ".csv");
            write_csv(record, file);
            result.run_files[static_cast<std::size_t>(run)] = file;
        };
    }

    result.mc = run_monte_carlo(config, options.runs, options.jobs, sink);
    if (options.write_runs) {
        result.aggregate_file = dir / "aggregate.csv";
        write_aggregate_csv(result.mc, result.aggregate_file);
    }
    return result;
}

SimulationConfig load_config(const std::string& path_or_preset) {
    if (std::filesystem::exists(path_or_preset)) {
        std::ifstream in(path_or_preset);
        if (!in) throw IoError("cannot open config '" + path_or_preset + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_config(buffer.str(), std::filesystem::path(path_or_preset).stem().string());
    }
    if (is_preset(path_or_preset)) {
        return preset(path_or_preset);
    }
    throw ConfigMismatch("'" + path_or_preset + "' is neither a config file nor a preset name");
}

} // namespace abcem
