#include "abcem/stats.hpp"

#include "abcem/errors.hpp"
#include "abcem/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abcem {

ReturnSeries log_returns(std::span<const double> prices) {
    if (prices.size() < 2) throw InsufficientSample("log_returns: need at least two prices");
    ReturnSeries out;
    out.values.reserve(prices.size() - 1);
    for (std::size_t k = 0; k + 1 < prices.size(); ++k) {
        if (!(prices[k] > 0.0) || !(prices[k + 1] > 0.0)) {
            throw NonPositivePrice("log_returns: non-positive price");
        }
        out.values.push_back(std::log(prices[k + 1] / prices[k]));
    }
    return out;
}

ReturnSeries diff_series(std::span<const double> logprices) {
    if (logprices.size() < 2) throw InsufficientSample("diff_series: need at least two entries");
    ReturnSeries out;
    out.values.reserve(logprices.size() - 1);
    for (std::size_t k = 0; k + 1 < logprices.size(); ++k) {
        out.values.push_back(logprices[k + 1] - logprices[k]);
    }
    return out;
}

std::vector<double> autocorrelation(const ReturnSeries& series, int max_lag) {
    const auto& r = series.values;
    const std::size_t n = r.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw InsufficientSample("autocorrelation: max_lag must be below the sample size");
    }
    const double rbar = mean(r);

    std::vector<double> centered(n);
    for (std::size_t t = 0; t < n; ++t) centered[t] = r[t] - rbar;

    std::vector<double> sq(n);
    for (std::size_t t = 0; t < n; ++t) sq[t] = centered[t] * centered[t];
    const double denom = pairwise_sum(sq);
    if (denom == 0.0) throw ZeroVariance("autocorrelation: zero sample variance");

    std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1);
    acf[0] = 1.0;
    std::vector<double> prod;
    for (int l = 1; l <= max_lag; ++l) {
        prod.resize(n - static_cast<std::size_t>(l));
        for (std::size_t t = 0; t + static_cast<std::size_t>(l) < n; ++t) {
            prod[t] = centered[t + static_cast<std::size_t>(l)] * centered[t];
        }
        acf[static_cast<std::size_t>(l)] = pairwise_sum(prod) / denom;
    }
    return acf;
}

double excess_kurtosis(const ReturnSeries& series) {
    const auto& r = series.values;
    if (r.size() < 4) throw InsufficientSample("excess_kurtosis: need at least 4 samples");
    const double rbar = mean(r);
    const std::size_t n = r.size();

    std::vector<double> m2(n), m4(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double d = r[t] - rbar;
        const double d2 = d * d;
        m2[t] = d2;
        m4[t] = d2 * d2;
    }
    const double v = pairwise_sum(m2) / static_cast<double>(n);
    if (v == 0.0) throw ZeroVariance("excess_kurtosis: zero sample variance");
    const double q = pairwise_sum(m4) / static_cast<double>(n);
    return q / (v * v) - 3.0;
}

double hill_estimator(std::span<const double> sample) {
    const std::size_t n = sample.size();
    const std::size_t k = static_cast<std::size_t>(0.05 * static_cast<double>(n));
    if (k < 1) throw InsufficientSample("hill_estimator: k = floor(0.05 n) < 1");

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (!(sorted[k - 1] > 0.0)) {
        throw NonPositiveEntry("hill_estimator: non-positive entry in the tail");
    }

    std::vector<double> logs(k);
    for (std::size_t i = 0; i < k; ++i) logs[i] = std::log(sorted[i]);
    const double diff = pairwise_sum(logs) / static_cast<double>(k) - std::log(sorted[k - 1]);
    if (diff == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / diff;
}

double hill_tail_index(const ReturnSeries& series) {
    std::vector<double> magnitudes;
    magnitudes.reserve(series.values.size());
    for (double v : series.values) {
        const double a = std::abs(v);
        if (a > 0.0) magnitudes.push_back(a);
    }
    return hill_estimator(magnitudes);
}

std::vector<std::pair<double, double>> qq_pairs(const ReturnSeries& series, int num_quantiles) {
    const auto& r = series.values;
    const std::size_t n = r.size();
    if (num_quantiles < 1 || n < static_cast<std::size_t>(num_quantiles)) {
        throw InsufficientSample("qq_pairs: need at least num_quantiles samples");
    }
    const double rbar = mean(r);
    std::vector<double> centered(n), sq(n);
    for (std::size_t t = 0; t < n; ++t) {
        centered[t] = r[t] - rbar;
        sq[t] = centered[t] * centered[t];
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n);
    if (var == 0.0) throw ZeroVariance("qq_pairs: zero sample variance");
    const double inv_sd = 1.0 / std::sqrt(var);

    std::vector<double> sorted(centered);
    std::sort(sorted.begin(), sorted.end());

    // Hazen plotting positions: order statistic j (1-based) sits at
    // (j - 0.5) / n; quantile queries interpolate linearly between them.
    auto empirical = [&](double p) {
        const double pos = p * static_cast<double>(n) - 0.5;
        if (pos <= 0.0) return sorted.front();
        if (pos >= static_cast<double>(n - 1)) return sorted.back();
        const std::size_t j = static_cast<std::size_t>(pos);
        const double w = pos - static_cast<double>(j);
        return (1.0 - w) * sorted[j] + w * sorted[j + 1];
    };

    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(static_cast<std::size_t>(num_quantiles));
    for (int i = 1; i <= num_quantiles; ++i) {
        const double p = (static_cast<double>(i) - 0.5) / static_cast<double>(num_quantiles);
        pairs.emplace_back(normal_quantile(p), empirical(p) * inv_sd);
    }
    return pairs;
}

StatsReport compute_stats(const ReturnSeries& series, int max_lag, int num_quantiles) {
    StatsReport report;
    report.n = series.size();

    const auto acf = autocorrelation(series, max_lag);
    report.acf_raw.assign(acf.begin() + 1, acf.end());

    ReturnSeries abs_series;
    abs_series.values.reserve(series.size());
    for (double v : series.values) abs_series.values.push_back(std::abs(v));
    const auto acf_abs = autocorrelation(abs_series, max_lag);
    report.acf_abs.assign(acf_abs.begin() + 1, acf_abs.end());

    report.excess_kurtosis = excess_kurtosis(series);
    report.hill = hill_tail_index(series);
    if (static_cast<std::size_t>(num_quantiles) <= series.size()) {
        report.qq = qq_pairs(series, num_quantiles);
    }
    return report;
}

} // namespace abcem
