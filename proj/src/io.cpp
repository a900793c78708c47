#include "vmdlinear/io.hpp"

#include "vmdlinear/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace vmdl::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_real(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(delim, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<TimeSeries> CsvTable::series(std::size_t first_row, std::size_t count) const {
    std::vector<TimeSeries> out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto begin = columns[c].begin() + static_cast<std::ptrdiff_t>(first_row);
        out.emplace_back(std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(count)), names[c],
                         static_cast<int>(c));
    }
    return out;
}

CsvTable parse_csv(std::string_view text, std::span<const std::string> columns) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::Parse, "CSV is empty");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<std::string> header;
    for (const auto& h : split(line, ',')) header.emplace_back(trim(h));
    if (header.size() < 2) {
        throw Error(Errc::Parse, "CSV needs a timestamp column and at least one value column");
    }

    std::vector<std::size_t> selected;
    if (columns.empty()) {
        for (std::size_t i = 1; i < header.size(); ++i) selected.push_back(i);
    } else {
        for (const auto& name : columns) {
            const auto it = std::find(header.begin() + 1, header.end(), name);
            if (it == header.end()) {
                std::string available;
                for (std::size_t i = 1; i < header.size(); ++i) {
                    available += (i > 1 ? ", " : "") + header[i];
                }
                throw Error(Errc::MissingColumn,
                            "column '" + name + "' not found; available columns: " + available);
            }
            selected.push_back(static_cast<std::size_t>(it - header.begin()));
        }
    }

    CsvTable table;
    for (std::size_t i : selected) table.names.push_back(header[i]);
    table.columns.resize(selected.size());

    std::vector<double> row(selected.size());
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        bool ok = true;
        for (std::size_t c = 0; c < selected.size() && ok; ++c) {
            ok = selected[c] < fields.size() && parse_real(fields[selected[c]], row[c]);
        }
        if (!ok) {
            ++table.dropped_rows;
            continue;
        }
        table.timestamps.emplace_back(trim(fields[0]));
        for (std::size_t c = 0; c < selected.size(); ++c) table.columns[c].push_back(row[c]);
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path, std::span<const std::string> columns) {
    return parse_csv(read_file(path), columns);
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, ptr};
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(Errc::Parse, "bad number '" + std::string(s) + "'");
    }
    return v;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error(Errc::Io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(Errc::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace vmdl::io
