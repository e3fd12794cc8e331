#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dilab::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // 1-based file line of each data row, for error messages.
    std::vector<std::size_t> line_numbers;

    std::optional<std::size_t> column(const std::string& name) const;
};

// Strict reader: uniform column counts, no quoting (the formats here never
// embed commas). Throws std::runtime_error naming the offending line.
Table read_file(const std::string& path);
Table parse(const std::string& text, const std::string& origin);

// Serializes a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

// Parses a double, rejecting trailing junk; empty string -> NaN.
double parse_double(const std::string& s, std::size_t line, const std::string& col);
long parse_long(const std::string& s, std::size_t line, const std::string& col);

}  // namespace dilab::csv
