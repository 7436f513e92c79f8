// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_CSV_HPP
#define CARLEMAN_CSV_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace carleman {

class csv_error : public std::runtime_error {
  public:
    csv_error(const std::string& file, long line, const std::string& message)
        : std::runtime_error(file + ": line " + std::to_string(line) + ": " + message) {}
};

class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Read a numeric CSV with a mandatory header row. When `expected_header` is
/// nonempty the header must match it exactly.
inline CsvTable read_csv(const std::string& path,
                         const std::vector<std::string>& expected_header = {}) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    CsvTable table;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const auto fields = detail::split_csv_line(stripped);
        if (table.header.empty()) {
            for (const auto& f : fields) table.header.push_back(detail::trim(f));
            if (!expected_header.empty() && table.header != expected_header) {
                std::string want;
                for (const auto& f : expected_header) want += (want.empty() ? "" : ",") + f;
                throw csv_error(path, lineno, "expected header '" + want + "'");
            }
            continue;
        }
        if (fields.size() != table.header.size())
            throw csv_error(path, lineno,
                            "expected " + std::to_string(table.header.size()) + " fields, got " +
                                std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& raw : fields) {
            const std::string f = detail::trim(raw);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size())
                throw csv_error(path, lineno, "cannot parse number '" + f + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw csv_error(path, lineno, "missing header row");
    return table;
}

/// Shortest of %.15g/%.16g/%.17g that round-trips the double exactly.
inline std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        const int n = std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        const auto [ptr, ec] = std::from_chars(buf, buf + n, back);
        if (ec == std::errc{} && ptr == buf + n && back == v) return buf;
    }
    return buf;
}

}  // namespace carleman

#endif  // CARLEMAN_CSV_HPP
