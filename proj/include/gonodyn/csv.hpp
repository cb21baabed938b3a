#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gonodyn/errors.hpp"

namespace gonodyn {

/// Shortest round-trip decimal form of a double (17 significant digits).
inline std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
    bool has_column(const std::string& name) const { return column(name) >= 0; }
};

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

/// Strict numeric cell: the whole cell must parse as a double.
inline double csv_number(const std::string& cell) {
    if (cell.empty()) throw ParseError("empty numeric cell in CSV input");
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == nullptr || *end != '\0')
        throw ParseError("malformed numeric cell in CSV input: '" + cell + "'");
    return v;
}

/// Header line plus data rows; every row must match the header width and at
/// least one data row must be present.
inline CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> cells = detail::split_csv_line(line);
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size())
            throw ParseError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(t.header.size()));
        t.rows.push_back(std::move(cells));
    }
    if (!have_header) throw ParseError("CSV input is empty");
    if (t.rows.empty()) throw ParseError("CSV input has a header but no data rows");
    return t;
}

}  // namespace gonodyn
