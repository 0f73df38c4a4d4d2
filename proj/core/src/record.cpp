#include "abcem/record.hpp"

#include "abcem/errors.hpp"

#include <algorithm>
#include <cassert>

namespace abcem {

void TimeSeriesRecord::append_row(std::span<const double> row) {
    assert(row.size() == columns_.size());
    data_.insert(data_.end(), row.begin(), row.end());
}

std::ptrdiff_t TimeSeriesRecord::column_index(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) return -1;
    return it - columns_.begin();
}

std::vector<double> TimeSeriesRecord::column(const std::string& name) const {
    const std::ptrdiff_t idx = column_index(name);
    if (idx < 0) throw IoError("record has no column named '" + name + "'");
    std::vector<double> out;
    out.reserve(rows());
    for (std::size_t r = 0; r < rows(); ++r) out.push_back(at(r, static_cast<std::size_t>(idx)));
    return out;
}

} // namespace abcem
