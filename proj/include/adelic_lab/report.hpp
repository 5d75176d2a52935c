#pragma once

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "adelic_lab/errors.hpp"

namespace adelic_lab {

enum class OutputFormat { Csv, Json, PlotData };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    if (s == "plot-data") return OutputFormat::PlotData;
    throw ParseError("unknown output format: " + s);
}

/// Column-ordered result table with a deterministic meta header.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(std::string key, std::string value) {
        meta.push_back({std::move(key), std::move(value)});
    }
    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

namespace detail {

inline std::string csv_quote(const std::string& s) {
    bool needs = false;
    for (char c : s)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') needs = true;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

inline void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.meta) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << detail::csv_quote(t.columns[i]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << detail::csv_quote(row[i]);
        os << "\n";
    }
}

inline void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto& [k, v] : t.meta) meta[k] = v;
    j["meta"] = meta;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json jr;
        for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i)
            jr[t.columns[i]] = row[i];
        rows.push_back(jr);
    }
    j["rows"] = rows;
    os << j.dump(2) << "\n";
}

inline void write_plot_data(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.meta) os << "# " << k << "=" << v << "\n";
    os << "#";
    for (const auto& c : t.columns) os << " " << c;
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
        os << "\n";
    }
}

inline void write_table(std::ostream& os, const Table& t, OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv:
            write_csv(os, t);
            break;
        case OutputFormat::Json:
            write_json(os, t);
            break;
        case OutputFormat::PlotData:
            write_plot_data(os, t);
            break;
    }
}

} // namespace adelic_lab
