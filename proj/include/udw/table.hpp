#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace udw {

// Empty cell, number, integer or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column(std::string_view name) const;  // throws InvalidArgument if absent
};

enum class Format { Csv, Json };
Format format_from_string(const std::string& s);

// 17 significant digits, so values round-trip exactly.
std::string format_double(double v);
std::string format_cell(const Cell& c);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// RFC-4180 parser returning raw fields (header included).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string fnv1a_hex(std::string_view data);

struct RunMetadata {
    std::string config_hash;
    std::string version;
    double tol_abs = 0.0;
    double tol_rel = 0.0;
    std::string timestamp;  // not part of the hash
};

// Writes the table to path ("-" is stdout) and, for files, the metadata to
// "<path>.meta.json". Throws IoError naming the path.
void emit(const Table& t, Format f, const std::string& path, const RunMetadata& meta);

}  // namespace udw
