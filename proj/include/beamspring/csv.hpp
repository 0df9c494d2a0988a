// CSV emission and parsing. Numbers are written with 17 significant
// digits so that write -> read round-trips bit-exactly.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "beamspring/dynamics.hpp"

namespace beamspring {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed CSV content; `row` is the 1-based data row (0 for header).
class CsvError : public std::runtime_error {
  public:
    CsvError(std::size_t row, const std::string& what)
        : std::runtime_error(what), row(row) {}
    std::size_t row;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double x);  // shortest %.17g form

void write_csv(const Table& table, const std::string& path);
Table read_csv(const std::string& path);

/// Trajectory CSV layout: t, q0..q{n-1}, v0..v{n-1}, a0..a{n-1}.
void write_timeseries_csv(const TimeSeries& series, const std::string& path);
TimeSeries read_timeseries_csv(const std::string& path);

}  // namespace beamspring
