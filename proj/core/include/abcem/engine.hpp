#pragma once

#include "abcem/config.hpp"
#include "abcem/record.hpp"
#include "abcem/rng.hpp"
#include "abcem/stats.hpp"

#include <memory>
#include <string>
#include <vector>

namespace abcem {

/// One assembled model: agent population + excess-demand aggregation +
/// price-adjustment process. The engine drives it through the canonical
/// step order (demands, aggregate, price, agent state update) and records
/// observables; the model never sees the recorder.
class Model {
public:
    virtual ~Model() = default;

    /// Sets the initial market state (k = 0) from the configuration.
    virtual void init(MarketState& market) = 0;

    /// Advances exactly one time step, updating `market` in place.
    virtual void step(MarketState& market) = 0;

    virtual const std::vector<std::string>& extra_columns() const = 0;
    virtual void extras(std::vector<double>& out) const = 0;
};

std::unique_ptr<Model> make_model(const SimulationConfig& config, const StreamFactory& streams);

/// Runs one simulation; the record holds num_steps + 1 rows, the configured
/// initial state included. All randomness comes from `streams`.
TimeSeriesRecord run_simulation(const SimulationConfig& config, const StreamFactory& streams);
TimeSeriesRecord run_simulation(const SimulationConfig& config);

/// Return series appropriate for the model: log-returns of the price path
/// for Cross/LLS, first differences of the log-price for FW.
ReturnSeries record_returns(const SimulationConfig& config, const TimeSeriesRecord& record);

/// Per-run stylized-fact summary plus the model-specific aggregates used by
/// the batch reports. Fields not applicable to the model are NaN.
struct RunStats {
    std::uint64_t seed = 0;
    StatsReport stats;
    double mean_abs_acf_raw = 0.0; // mean over lags 1..L of |C(l)|
    double mean_acf_abs = 0.0;     // mean over lags 1..L of C_|R|(l)
    double final_price = 0.0;
    double chartist_share = 0.0;   // FW: run mean of n_c
    double boundary_fraction = 0.0; // LLS: share of pre-noise optima at a boundary
    double max_rel_residual = 0.0;  // LLS: max |clearance residual| / n_total
    double final_wealth = 0.0;      // Cross wealth extension: mean final wealth
};

RunStats run_stats(const SimulationConfig& config, const TimeSeriesRecord& record, int max_lag = 20);

struct MonteCarloResult {
    std::vector<RunStats> runs;
    RunStats mean; // arithmetic means; acf vectors averaged element-wise
};

/// Monte-Carlo batch: per-run seeds derived from config.seed, runs executed
/// on `jobs` workers. Results are independent of `jobs`.
MonteCarloResult run_monte_carlo(const SimulationConfig& config, int runs, int jobs = 1);

/// As above but also hands each finished record to `sink` (run index, record);
/// used by the CLI to persist per-run CSVs. `sink` may be empty.
MonteCarloResult run_monte_carlo(
    const SimulationConfig& config, int runs, int jobs,
    const std::function<void(int, const TimeSeriesRecord&)>& sink);

} // namespace abcem
