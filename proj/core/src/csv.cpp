#include "abcem/csv.hpp"

#include "abcem/config_text.hpp"
#include "abcem/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace abcem {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

} // namespace

void write_csv(const TimeSeriesRecord& record, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    std::string line;
    for (std::size_t c = 0; c < record.cols(); ++c) {
        if (c) line += ',';
        line += record.columns()[c];
    }
    line += '\n';
    out << line;
    for (std::size_t r = 0; r < record.rows(); ++r) {
        line.clear();
        for (std::size_t c = 0; c < record.cols(); ++c) {
            if (c) line += ',';
            line += format_double(record.at(r, c));
        }
        line += '\n';
        out << line;
    }
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

TimeSeriesRecord read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv file '" + path.string() + "'");

    std::vector<std::string> columns;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) columns.push_back(cell);
    }
    TimeSeriesRecord record(columns);
    std::vector<double> row;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        row.clear();
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            row.push_back(std::strtod(cell.c_str(), &end));
            if (end == cell.c_str()) throw IoError("bad numeric cell in '" + path.string() + "'");
        }
        if (row.size() != columns.size()) {
            throw IoError("ragged row in '" + path.string() + "'");
        }
        record.append_row(row);
    }
    return record;
}

void write_aggregate_csv(const MonteCarloResult& result, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "run,seed,n,excess_kurtosis,hill,mean_abs_acf_raw,mean_acf_abs,final_price,"
           "chartist_share,boundary_fraction,max_rel_residual,final_wealth\n";
    auto row = [&](long run, const RunStats& rs) {
        out << run << ',' << rs.seed << ',' << rs.stats.n << ',';
        out << format_double(rs.stats.excess_kurtosis) << ',' << format_double(rs.stats.hill)
            << ',';
        out << format_double(rs.mean_abs_acf_raw) << ',' << format_double(rs.mean_acf_abs) << ',';
        out << format_double(rs.final_price) << ',' << format_double(rs.chartist_share) << ',';
        out << format_double(rs.boundary_fraction) << ',' << format_double(rs.max_rel_residual)
            << ',';
        out << format_double(rs.final_wealth) << '\n';
    };
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
        row(static_cast<long>(r), result.runs[r]);
    }
    row(-1, result.mean);
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_stats_csv(const StatsReport& report, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "name,value\n";
    out << "n," << report.n << '\n';
    out << "excess_kurtosis," << format_double(report.excess_kurtosis) << '\n';
    out << "hill," << format_double(report.hill) << '\n';
    for (std::size_t l = 0; l < report.acf_raw.size(); ++l) {
        out << "acf_raw_" << (l + 1) << ',' << format_double(report.acf_raw[l]) << '\n';
    }
    for (std::size_t l = 0; l < report.acf_abs.size(); ++l) {
        out << "acf_abs_" << (l + 1) << ',' << format_double(report.acf_abs[l]) << '\n';
    }
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_qq_csv(const StatsReport& report, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "theoretical,empirical\n";
    for (const auto& [theory, empirical] : report.qq) {
        out << format_double(theory) << ',' << format_double(empirical) << '\n';
    }
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

} // namespace abcem
