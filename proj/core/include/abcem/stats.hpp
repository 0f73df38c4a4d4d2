#pragma once

#include <span>
#include <utility>
#include <vector>

namespace abcem {

/// Logarithmic return sequence (or raw log-price differences for FW).
struct ReturnSeries {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// values[k] = ln(prices[k+1] / prices[k]); requires positive prices.
ReturnSeries log_returns(std::span<const double> prices);

/// First differences, for series that are already log-prices.
ReturnSeries diff_series(std::span<const double> logprices);

/// Sample autocorrelation with the full-sample normalization that
/// guarantees C(0) = 1 and |C(l)| <= 1. Returns C(0..max_lag).
std::vector<double> autocorrelation(const ReturnSeries& series, int max_lag);

/// m4 / m2^2 - 3 with central sample moments, no bias correction.
double excess_kurtosis(const ReturnSeries& series);

/// Hill tail-index estimator on a positive sample, top k = floor(0.05 n)
/// order statistics; +infinity when the top-k entries coincide.
double hill_estimator(std::span<const double> sample);

/// Hill estimator applied to the absolute returns with zeros removed.
double hill_tail_index(const ReturnSeries& series);

/// Empirical vs. standard-normal quantiles at plotting positions
/// (i - 0.5) / num_quantiles, after standardizing the series to zero mean
/// and unit variance. First pair element is the theoretical quantile.
std::vector<std::pair<double, double>> qq_pairs(const ReturnSeries& series, int num_quantiles);

/// Stylized-fact summary of one return series.
struct StatsReport {
    double excess_kurtosis = 0.0;
    double hill = 0.0;
    std::vector<double> acf_raw; // lags 1..L
    std::vector<double> acf_abs; // lags 1..L
    std::vector<std::pair<double, double>> qq;
    std::size_t n = 0;
};

StatsReport compute_stats(const ReturnSeries& series, int max_lag = 20, int num_quantiles = 100);

} // namespace abcem
