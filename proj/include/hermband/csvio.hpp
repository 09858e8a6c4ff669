#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hermband/errors.hpp"

namespace hermband {

// Shortest round-trip decimal form; the same bytes on every run and host.
inline std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_number(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

using Cell = std::variant<std::int64_t, double, std::string>;

// One result table, writable as CSV (meta as leading # lines) or JSON.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> meta;
};

inline std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c)) return format_number(std::get<std::int64_t>(c));
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    return std::get<std::string>(c);
}

inline std::string table_to_csv(const Table& t) {
    std::string out;
    for (const auto& [k, v] : t.meta) {
        out += "# ";
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_to_string(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline std::string table_to_json(const Table& t) {
    nlohmann::ordered_json doc;
    if (!t.meta.empty()) {
        nlohmann::ordered_json meta;
        for (const auto& [k, v] : t.meta) meta[k] = v;
        doc["meta"] = std::move(meta);
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i) {
            if (std::holds_alternative<std::int64_t>(row[i]))
                obj[t.header[i]] = std::get<std::int64_t>(row[i]);
            else if (std::holds_alternative<double>(row[i]))
                obj[t.header[i]] = std::get<double>(row[i]);
            else
                obj[t.header[i]] = std::get<std::string>(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);  // binary: keep LF endings everywhere
    if (!out) throw_io("cannot open " + path + " for writing");
    out << content;
    if (!out) throw_io("write failed for " + path);
}

}  // namespace hermband
