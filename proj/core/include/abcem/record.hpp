#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace abcem {

/// Current market observables shared between the agent population and the
/// price-adjustment process. `price` holds S(t_k) for Cross/LLS and the
/// log-price P(t_k) for FW.
struct MarketState {
    double price = 1.0;
    double price_prev = 1.0;
    double excess_demand = 0.0;
    double excess_demand_prev = 0.0;
    std::int64_t step_index = 0;
};

/// Column-labelled time series, one row per recorded step (initial state at
/// k = 0 included).
class TimeSeriesRecord {
public:
    TimeSeriesRecord() = default;
    explicit TimeSeriesRecord(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void append_row(std::span<const double> row);

    std::size_t rows() const { return columns_.empty() ? 0 : data_.size() / columns_.size(); }
    std::size_t cols() const { return columns_.size(); }
    double at(std::size_t row, std::size_t col) const { return data_[row * columns_.size() + col]; }

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<double>& data() const { return data_; }

    /// Index of a named column; -1 if absent.
    std::ptrdiff_t column_index(const std::string& name) const;

    /// Full column as a contiguous copy.
    std::vector<double> column(const std::string& name) const;

private:
    std::vector<std::string> columns_;
    std::vector<double> data_; // row-major
};

} // namespace abcem
