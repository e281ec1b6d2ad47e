#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace scalereg::cli {

enum class Format { csv, json };

/// Rectangular result table; cells are JSON scalars, null for absent values.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    void add_row(std::vector<nlohmann::json> row);
};

/// Finite doubles as numbers, everything else as null.
[[nodiscard]] nlohmann::json number(double v);

void write_table_csv(const Table& table, std::ostream& out);
void write_table_json(const Table& table, std::ostream& out);

/// Writes <dir>/<name>.<ext> and returns the path.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, Format format);

struct ResultBundle {
    std::vector<Table> tables;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<std::string> warnings;
    std::string headline;
};

}  // namespace scalereg::cli
