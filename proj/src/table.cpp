#include "udw/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "udw/errors.hpp"

namespace udw {

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw InvalidArgument("table has no column '" + std::string(name) + "'");
}

Format format_from_string(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("format must be csv or json, got '" + s + "'");
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
    return std::visit(
        [](const auto& x) -> std::string {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, std::monostate>) return "";
            else if constexpr (std::is_same_v<X, double>) return format_double(x);
            else if constexpr (std::is_same_v<X, long long>) return std::to_string(x);
            else return x;
        },
        c);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

nlohmann::json json_cell(const Cell& c) {
    return std::visit(
        [](const auto& x) -> nlohmann::json {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<X, double>) return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
            else return x;
        },
        c);
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
    out += "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(format_cell(row[i]));
        out += "\r\n";
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr.dump(1) + "\n";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        any = true;
        if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (ch == '\r' || ch == '\n') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else {
            field += ch;
        }
    }
    if (any || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    auto res = std::to_chars(buf, buf + 16, h, 16);
    std::string s(buf, res.ptr);
    return std::string(16 - s.size(), '0') + s;
}

void emit(const Table& t, Format f, const std::string& path, const RunMetadata& meta) {
    const std::string body = f == Format::Csv ? to_csv(t) : to_json(t);
    if (path == "-") {
        std::cout << body;
        if (!std::cout) throw IoError("failed writing to stdout");
        return;
    }
    {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open '" + path + "' for writing");
        os << body;
        if (!os) throw IoError("failed writing '" + path + "'");
    }
    nlohmann::ordered_json m;
    m["config_hash"] = meta.config_hash;
    m["version"] = meta.version;
    m["tolerance"] = {{"abs", meta.tol_abs}, {"rel", meta.tol_rel}};
    m["timestamp"] = meta.timestamp;
    m["rows"] = t.rows.size();
    const std::string mpath = path + ".meta.json";
    std::ofstream ms(mpath);
    if (!ms) throw IoError("cannot open '" + mpath + "' for writing");
    ms << m.dump(2) << "\n";
    if (!ms) throw IoError("failed writing '" + mpath + "'");
}

}  // namespace udw
