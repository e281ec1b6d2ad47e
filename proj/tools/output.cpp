#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "scalereg/errors.hpp"

namespace scalereg::cli {

namespace {

std::string csv_cell(const nlohmann::json& v) {
    if (v.is_null()) return {};
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_number()) return v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

}  // namespace

void Table::add_row(std::vector<nlohmann::json> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table '" + name + "': row width does not match header");
    }
    rows.push_back(std::move(row));
}

nlohmann::json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

void write_table_csv(const Table& table, std::ostream& out) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
        out << '\n';
    }
}

void write_table_json(const Table& table, std::ostream& out) {
    nlohmann::json j;
    j["table"] = table.name;
    j["columns"] = table.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) j["rows"].push_back(row);
    out << j.dump(1) << '\n';
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, Format format) {
    const auto path = dir / (table.name + (format == Format::csv ? ".csv" : ".json"));
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    if (format == Format::csv) {
        write_table_csv(table, out);
    } else {
        write_table_json(table, out);
    }
    return path;
}

}  // namespace scalereg::cli
