#pragma once

#include "vmdlinear/series.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vmdl::io {

// A CSV file with a header row. The first column is the timestamp, kept as
// text for output alignment; the selected remaining columns are parsed as
// reals. Rows with an unparseable or non-finite value in any selected column
// are dropped and counted.
struct CsvTable {
    std::vector<std::string> timestamps;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::size_t dropped_rows = 0;

    std::size_t rows() const noexcept { return timestamps.size(); }
    std::vector<TimeSeries> series(std::size_t first_row, std::size_t count) const;
    std::vector<TimeSeries> series() const { return series(0, rows()); }
};

/// `columns` empty selects every non-timestamp column. A missing column
/// throws MissingColumn listing the available ones.
CsvTable read_csv(const std::filesystem::path& path, std::span<const std::string> columns = {});
CsvTable parse_csv(std::string_view text, std::span<const std::string> columns = {});

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double v);

/// Strict inverse of format_double; throws Parse on trailing garbage.
double parse_double(std::string_view s);

std::string read_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::vector<std::string> split(std::string_view s, char delim);

}  // namespace vmdl::io
