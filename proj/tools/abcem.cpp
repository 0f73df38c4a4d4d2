// Command-line front end: run single simulations, Monte-Carlo batches,
// analyze recorded CSVs, and list/emit the bundled parameter presets.

#include "abcem/batch.hpp"
#include "abcem/config_text.hpp"
#include "abcem/csv.hpp"
#include "abcem/engine.hpp"
#include "abcem/presets.hpp"
#include "abcem/stats.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

void resolve_seed(abcem::SimulationConfig& config, const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed) {
        config.seed = *flag_seed;
        config.seed_set = true;
        return;
    }
    if (config.seed_set) return;
    if (const char* env = std::getenv("ABCEM_SEED")) {
        config.seed = std::strtoull(env, nullptr, 10);
        config.seed_set = true;
    }
}

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ABCEM: agent-based computational economic market simulator"};
    app.require_subcommand(1);

    std::string config_arg;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    int runs = 0;
    int jobs = default_jobs();

    CLI::App* cmd_run = app.add_subcommand("run", "run one simulation and write a CSV");
    cmd_run->add_option("--config", config_arg, "config file or preset name")->required();
    cmd_run->add_option("--seed", seed, "master seed (overrides the config)");
    cmd_run->add_option("--out", out_dir, "output directory");

    CLI::App* cmd_batch = app.add_subcommand("batch", "Monte-Carlo batch with aggregate stats");
    cmd_batch->add_option("--config", config_arg, "config file or preset name")->required();
    cmd_batch->add_option("--runs", runs, "number of Monte-Carlo runs");
    cmd_batch->add_option("--seed", seed, "master seed (overrides the config)");
    cmd_batch->add_option("--out", out_dir, "output directory");
    cmd_batch->add_option("--jobs", jobs, "worker threads");

    std::string csv_path;
    std::string column = "price";
    int max_lag = 20;
    int num_qq = 100;
    CLI::App* cmd_analyze = app.add_subcommand("analyze", "stylized-fact stats of a recorded CSV");
    cmd_analyze->add_option("csv", csv_path, "input CSV produced by run/batch")->required();
    cmd_analyze->add_option("--column", column, "price column to analyze")
        ->check(CLI::IsMember({"price", "logprice"}));
    cmd_analyze->add_option("--max-lag", max_lag, "autocorrelation lags");
    cmd_analyze->add_option("--qq", num_qq, "number of QQ quantiles");

    bool list_presets = false;
    std::string emit_name;
    CLI::App* cmd_presets = app.add_subcommand("presets", "bundled parameter presets");
    cmd_presets->add_flag("--list", list_presets, "list preset names");
    cmd_presets->add_option("--emit", emit_name, "print a preset config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_run->parsed()) {
            abcem::SimulationConfig config = abcem::load_config(config_arg);
            resolve_seed(config, seed);
            const abcem::TimeSeriesRecord record = abcem::run_simulation(config);
            const std::filesystem::path file =
                std::filesystem::path(out_dir) / (config.name + "_run0.csv");
            abcem::write_csv(record, file);
            std::cout << file.string() << "\n";
        } else if (cmd_batch->parsed()) {
            abcem::SimulationConfig config = abcem::load_config(config_arg);
            resolve_seed(config, seed);
            abcem::BatchOptions options;
            options.runs = runs > 0 ? runs : config.monte_carlo_runs;
            options.jobs = jobs;
            options.out_dir = out_dir;
            const abcem::BatchResult result = abcem::run_batch(config, options);
            std::cout << result.aggregate_file.string() << "\n";
        } else if (cmd_analyze->parsed()) {
            const abcem::TimeSeriesRecord record = abcem::read_csv(csv_path);
            const auto prices = record.column(column);
            const abcem::ReturnSeries returns = column == "logprice"
                                                    ? abcem::diff_series(prices)
                                                    : abcem::log_returns(prices);
            const abcem::StatsReport report = abcem::compute_stats(
                returns, std::min<int>(max_lag, static_cast<int>(returns.size()) - 1),
                std::min<int>(num_qq, static_cast<int>(returns.size())));
            const std::filesystem::path base = std::filesystem::path(csv_path);
            std::filesystem::path stats_file = base;
            stats_file.replace_filename(base.stem().string() + "_stats.csv");
            std::filesystem::path qq_file = base;
            qq_file.replace_filename(base.stem().string() + "_qq.csv");
            abcem::write_stats_csv(report, stats_file);
            abcem::write_qq_csv(report, qq_file);
            std::cout << stats_file.string() << "\n" << qq_file.string() << "\n";
        } else if (cmd_presets->parsed()) {
            if (!emit_name.empty()) {
                std::cout << abcem::preset_text(emit_name);
            } else if (list_presets) {
                for (const std::string& name : abcem::preset_names()) std::cout << name << "\n";
            } else {
                std::cerr << "presets: use --list or --emit NAME\n";
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
