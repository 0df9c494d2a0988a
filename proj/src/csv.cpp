#include "beamspring/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace beamspring {

std::string format_double(double x) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, len);
}

namespace {

double parse_double(const std::string& field, std::size_t row) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw CsvError(row, "row " + std::to_string(row) + ": cannot parse number '" +
                                field + "'");
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

void write_csv(const Table& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    Table table;
    std::string line;
    if (!std::getline(in, line))
        throw CsvError(0, "'" + path + "' is empty (missing header)");
    table.header = split_fields(strip_cr(line));
    if (table.header.empty() || table.header[0].empty() ||
        (table.header[0].find_first_not_of("-+.0123456789eE") == std::string::npos))
        throw CsvError(0, "'" + path + "' has a missing or malformed header row");

    const std::size_t n_cols = table.header.size();
    std::size_t row_index = 0;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        ++row_index;
        const auto fields = split_fields(line);
        if (fields.size() != n_cols)
            throw CsvError(row_index,
                           "row " + std::to_string(row_index) + ": expected " +
                               std::to_string(n_cols) + " columns, got " +
                               std::to_string(fields.size()));
        std::vector<double> values(n_cols);
        for (std::size_t i = 0; i < n_cols; ++i)
            values[i] = parse_double(fields[i], row_index);
        table.rows.push_back(std::move(values));
    }
    return table;
}

void write_timeseries_csv(const TimeSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    const int n = series.n_dof();
    out << 't';
    for (int j = 0; j < n; ++j) out << ",q" << j;
    for (int j = 0; j < n; ++j) out << ",v" << j;
    for (int j = 0; j < n; ++j) out << ",a" << j;
    out << '\n';
    for (int i = 0; i < series.n_samples(); ++i) {
        out << format_double(series.t[i]);
        for (int j = 0; j < n; ++j) out << ',' << format_double(series.q(i, j));
        for (int j = 0; j < n; ++j) out << ',' << format_double(series.v(i, j));
        for (int j = 0; j < n; ++j) out << ',' << format_double(series.a(i, j));
        out << '\n';
    }
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

TimeSeries read_timeseries_csv(const std::string& path) {
    const Table table = read_csv(path);
    const std::size_t n_cols = table.header.size();
    if (n_cols < 4 || (n_cols - 1) % 3 != 0 || table.header[0] != "t")
        throw CsvError(0, "'" + path + "' is not a trajectory CSV (expected columns "
                          "t, q0.., v0.., a0..)");
    const int n = static_cast<int>((n_cols - 1) / 3);
    for (int j = 0; j < n; ++j) {
        if (table.header[1 + j] != "q" + std::to_string(j) ||
            table.header[1 + n + j] != "v" + std::to_string(j) ||
            table.header[1 + 2 * n + j] != "a" + std::to_string(j))
            throw CsvError(0, "'" + path + "' has an unexpected trajectory header");
    }
    if (table.rows.size() < 2)
        throw CsvError(table.rows.size(), "trajectory needs at least 2 samples");

    TimeSeries series;
    const std::size_t rows = table.rows.size();
    series.t.resize(rows);
    series.q.resize(rows, n);
    series.v.resize(rows, n);
    series.a.resize(rows, n);
    for (std::size_t i = 0; i < rows; ++i) {
        series.t[i] = table.rows[i][0];
        for (int j = 0; j < n; ++j) {
            series.q(i, j) = table.rows[i][1 + j];
            series.v(i, j) = table.rows[i][1 + n + j];
            series.a(i, j) = table.rows[i][1 + 2 * n + j];
        }
    }
    series.dt = series.t[1] - series.t[0];
    if (!(series.dt > 0.0))
        throw CsvError(2, "trajectory time column is not increasing");
    for (std::size_t i = 1; i < rows; ++i) {
        const double expected = series.t[0] + static_cast<double>(i) * series.dt;
        if (std::abs(series.t[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
            throw CsvError(i + 1, "row " + std::to_string(i + 1) +
                                      ": non-uniform sampling in time column");
    }
    return series;
}

}  // namespace beamspring
