#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalereg/series.hpp"

namespace scalereg {

using Timestamp = std::chrono::sys_seconds;

/// Named column; NaN marks a missing or unparseable cell until `clean` runs.
struct Column {
    std::string name;
    std::vector<double> values;
};

struct Dataset {
    std::vector<Column> columns;
    std::string timestamp_name;         // empty when the data carries no timestamps
    std::vector<Timestamp> timestamps;  // empty or one per row
    std::string source;
    std::vector<std::string> log;

    [[nodiscard]] std::size_t rows() const noexcept {
        return columns.empty() ? timestamps.size() : columns.front().values.size();
    }
    [[nodiscard]] bool has_timestamps() const noexcept { return !timestamps.empty(); }
    [[nodiscard]] bool has_missing() const;
    /// @throws InputError naming an unknown column.
    [[nodiscard]] const Column& column(std::string_view name) const;
    /// @throws InputError when the column still holds missing values.
    [[nodiscard]] TimeSeries series(std::string_view name) const;
};

struct CsvSpec {
    /// Columns to read; empty reads every column except the timestamp.
    std::vector<std::string> columns;
    std::optional<std::string> timestamp_column;
    char delimiter = ',';
};

/// @throws InputError for a missing file or column, non-increasing timestamps
///         or when no row survives parsing.
[[nodiscard]] Dataset load_csv(const std::filesystem::path& path, const CsvSpec& spec);
[[nodiscard]] Dataset parse_csv(std::istream& in, const CsvSpec& spec, std::string source = {});

/// Values are written with 17 significant digits; missing cells stay empty.
void write_csv(const Dataset& dataset, const std::filesystem::path& path, char delimiter = ',');
void write_csv(const Dataset& dataset, std::ostream& out, char delimiter = ',');

/// Accepts YYYY-MM-DD with an optional [T ]HH:MM[:SS] part and trailing Z.
[[nodiscard]] std::optional<Timestamp> parse_timestamp(std::string_view text);
[[nodiscard]] std::string format_timestamp(Timestamp ts);

struct CleaningPolicy {
    std::size_t interpolate_max_gap = 6;
    double max_drop_fraction = 0.2;
};

/// Interior gaps of at most `interpolate_max_gap` missing cells are filled by
/// linear interpolation; longer or edge gaps drop their rows from every column.
/// @throws InputError ("data too sparse") when more than max_drop_fraction of
///         rows would be dropped.
[[nodiscard]] Dataset clean(const Dataset& dataset, const CleaningPolicy& policy = {});

enum class Season { winter, spring, summer, fall };

[[nodiscard]] std::string_view season_name(Season season);
/// @throws InputError for unknown names.
[[nodiscard]] Season parse_season(std::string_view name);
/// Dec-Feb winter, Mar-May spring, Jun-Aug summer, Sep-Nov fall.
[[nodiscard]] Season season_of_month(unsigned month);

struct SeasonalSlice {
    Season season;
    Dataset dataset;
};

/// Rows grouped by meteorological season, concatenated across years in time order.
class SeasonalSplit {
public:
    explicit SeasonalSplit(std::array<SeasonalSlice, 4> slices) : slices_(std::move(slices)) {}

    /// @throws InputError when the season has no rows.
    [[nodiscard]] const SeasonalSlice& slice(Season season) const;
    [[nodiscard]] std::size_t rows(Season season) const;

private:
    std::array<SeasonalSlice, 4> slices_;
};

/// @throws InputError when the dataset has no timestamps.
[[nodiscard]] SeasonalSplit split_seasons(const Dataset& dataset);

}  // namespace scalereg
