#include "scalereg/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "scalereg/errors.hpp"

namespace scalereg {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t next = line.find(delimiter, pos);
        if (next == std::string_view::npos) {
            out.push_back(trim(line.substr(pos)));
            return out;
        }
        out.push_back(trim(line.substr(pos, next - pos)));
        pos = next + 1;
    }
}

std::optional<double> parse_number(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

bool parse_uint(std::string_view text, unsigned& out) {
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Dataset select_rows(const Dataset& in, const std::vector<char>& keep) {
    Dataset out;
    out.timestamp_name = in.timestamp_name;
    out.source = in.source;
    out.log = in.log;
    for (const auto& col : in.columns) {
        Column c{col.name, {}};
        for (std::size_t r = 0; r < keep.size(); ++r) {
            if (keep[r]) c.values.push_back(col.values[r]);
        }
        out.columns.push_back(std::move(c));
    }
    if (in.has_timestamps()) {
        for (std::size_t r = 0; r < keep.size(); ++r) {
            if (keep[r]) out.timestamps.push_back(in.timestamps[r]);
        }
    }
    return out;
}

}  // namespace

bool Dataset::has_missing() const {
    return std::any_of(columns.begin(), columns.end(), [](const Column& c) {
        return std::any_of(c.values.begin(), c.values.end(), [](double v) { return std::isnan(v); });
    });
}

const Column& Dataset::column(std::string_view name) const {
    for (const auto& c : columns) {
        if (c.name == name) return c;
    }
    throw InputError("missing column '" + std::string(name) + "'");
}

TimeSeries Dataset::series(std::string_view name) const {
    const Column& c = column(name);
    for (std::size_t r = 0; r < c.values.size(); ++r) {
        if (std::isnan(c.values[r])) {
            throw InputError("column '" + c.name + "' has a missing value at row " +
                             std::to_string(r + 1) + "; clean the dataset first");
        }
    }
    return TimeSeries(c.values, c.name);
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    unsigned y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(5, 2), mo) ||
        !parse_uint(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    if (text.size() > 10) {
        if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
        const std::string_view clock = text.substr(11);
        if (clock.size() != 5 && clock.size() != 8) return std::nullopt;
        if (clock[2] != ':' || !parse_uint(clock.substr(0, 2), h) ||
            !parse_uint(clock.substr(3, 2), mi)) {
            return std::nullopt;
        }
        if (clock.size() == 8 && (clock[5] != ':' || !parse_uint(clock.substr(6, 2), s))) {
            return std::nullopt;
        }
        if (h > 23 || mi > 59 || s > 59) return std::nullopt;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(y)},
                                          std::chrono::month{mo}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return std::chrono::sys_days{ymd} + std::chrono::hours{h} + std::chrono::minutes{mi} +
           std::chrono::seconds{s};
}

std::string format_timestamp(Timestamp ts) {
    const auto day = std::chrono::floor<std::chrono::days>(ts);
    const std::chrono::year_month_day ymd{day};
    const std::chrono::hh_mm_ss clock{ts - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(clock.hours().count()), static_cast<int>(clock.minutes().count()),
                  static_cast<int>(clock.seconds().count()));
    return buf;
}

Dataset parse_csv(std::istream& in, const CsvSpec& spec, std::string source) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty CSV input: no header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = split(line, spec.delimiter);

    auto find = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        return std::nullopt;
    };

    Dataset ds;
    ds.source = std::move(source);
    std::optional<std::size_t> ts_index;
    if (spec.timestamp_column) {
        ts_index = find(*spec.timestamp_column);
        if (!ts_index) throw InputError("missing column '" + *spec.timestamp_column + "'");
        ds.timestamp_name = *spec.timestamp_column;
    }

    std::vector<std::size_t> indices;
    if (spec.columns.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (ts_index && i == *ts_index) continue;
            indices.push_back(i);
            ds.columns.push_back({std::string(header[i]), {}});
        }
    } else {
        for (const auto& name : spec.columns) {
            const auto idx = find(name);
            if (!idx) throw InputError("missing column '" + name + "'");
            indices.push_back(*idx);
            ds.columns.push_back({name, {}});
        }
    }
    if (indices.empty()) throw InputError("no data columns selected");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line, spec.delimiter);
        if (ts_index) {
            const auto ts = *ts_index < cells.size() ? parse_timestamp(cells[*ts_index])
                                                     : std::optional<Timestamp>{};
            if (!ts) {
                ds.log.push_back("line " + std::to_string(line_no) +
                                 ": unparseable timestamp, row skipped");
                continue;
            }
            if (!ds.timestamps.empty() && *ts <= ds.timestamps.back()) {
                throw InputError("timestamps not strictly increasing at line " +
                                 std::to_string(line_no));
            }
            ds.timestamps.push_back(*ts);
        }
        for (std::size_t c = 0; c < indices.size(); ++c) {
            const auto v = indices[c] < cells.size() ? parse_number(cells[indices[c]])
                                                      : std::optional<double>{};
            if (!v) {
                ds.log.push_back("line " + std::to_string(line_no) + ": missing value in '" +
                                 ds.columns[c].name + "', flagged for cleaning");
            }
            ds.columns[c].values.push_back(v.value_or(kMissing));
        }
    }
    if (ds.rows() == 0) throw InputError("no valid data rows in " + ds.source);
    return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvSpec& spec) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file " + path.string());
    return parse_csv(in, spec, path.string());
}

void write_csv(const Dataset& dataset, std::ostream& out, char delimiter) {
    bool first = true;
    auto sep = [&] {
        if (!first) out << delimiter;
        first = false;
    };
    if (dataset.has_timestamps()) {
        sep();
        out << (dataset.timestamp_name.empty() ? "timestamp" : dataset.timestamp_name);
    }
    for (const auto& c : dataset.columns) {
        sep();
        out << c.name;
    }
    out << '\n';
    for (std::size_t r = 0; r < dataset.rows(); ++r) {
        first = true;
        if (dataset.has_timestamps()) {
            sep();
            out << format_timestamp(dataset.timestamps[r]);
        }
        for (const auto& c : dataset.columns) {
            sep();
            out << format_number(c.values[r]);
        }
        out << '\n';
    }
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path, char delimiter) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    write_csv(dataset, out, delimiter);
}

Dataset clean(const Dataset& dataset, const CleaningPolicy& policy) {
    Dataset out = dataset;
    const std::size_t rows = dataset.rows();
    std::vector<char> keep(rows, 1);

    for (auto& col : out.columns) {
        auto& v = col.values;
        std::size_t r = 0;
        while (r < rows) {
            if (!std::isnan(v[r])) {
                ++r;
                continue;
            }
            std::size_t end = r;
            while (end < rows && std::isnan(v[end])) ++end;
            const std::size_t gap = end - r;
            const bool interior = r > 0 && end < rows;
            if (interior && gap <= policy.interpolate_max_gap) {
                const double left = v[r - 1];
                const double right = v[end];
                const double span = static_cast<double>(gap + 1);
                for (std::size_t i = r; i < end; ++i) {
                    const double w = static_cast<double>(i - (r - 1)) / span;
                    v[i] = left + w * (right - left);
                }
                out.log.push_back("column '" + col.name + "': interpolated rows " +
                                  std::to_string(r + 1) + "-" + std::to_string(end));
            } else {
                for (std::size_t i = r; i < end; ++i) keep[i] = 0;
                out.log.push_back("column '" + col.name + "': dropped rows " +
                                  std::to_string(r + 1) + "-" + std::to_string(end) +
                                  (interior ? " (gap longer than limit)" : " (gap at series edge)"));
            }
            r = end;
        }
    }

    const auto dropped = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), 0));
    if (static_cast<double>(dropped) > policy.max_drop_fraction * static_cast<double>(rows)) {
        throw InputError("data too sparse: cleaning would drop " + std::to_string(dropped) + " of " +
                         std::to_string(rows) + " rows");
    }
    if (dropped == 0) return out;
    return select_rows(out, keep);
}

std::string_view season_name(Season season) {
    switch (season) {
        case Season::winter: return "winter";
        case Season::spring: return "spring";
        case Season::summer: return "summer";
        case Season::fall: return "fall";
    }
    return "unknown";
}

Season parse_season(std::string_view name) {
    for (Season s : {Season::winter, Season::spring, Season::summer, Season::fall}) {
        if (season_name(s) == name) return s;
    }
    throw InputError("unknown season '" + std::string(name) + "'");
}

Season season_of_month(unsigned month) {
    switch (month) {
        case 12: case 1: case 2: return Season::winter;
        case 3: case 4: case 5: return Season::spring;
        case 6: case 7: case 8: return Season::summer;
        case 9: case 10: case 11: return Season::fall;
        default: throw InputError("month out of range: " + std::to_string(month));
    }
}

const SeasonalSlice& SeasonalSplit::slice(Season season) const {
    const auto& s = slices_[static_cast<std::size_t>(season)];
    if (s.dataset.rows() == 0) {
        throw InputError("season '" + std::string(season_name(season)) + "' has no rows");
    }
    return s;
}

std::size_t SeasonalSplit::rows(Season season) const {
    return slices_[static_cast<std::size_t>(season)].dataset.rows();
}

SeasonalSplit split_seasons(const Dataset& dataset) {
    if (!dataset.has_timestamps()) throw InputError("seasonal split needs timestamps");
    std::array<SeasonalSlice, 4> slices{
        SeasonalSlice{Season::winter, {}}, SeasonalSlice{Season::spring, {}},
        SeasonalSlice{Season::summer, {}}, SeasonalSlice{Season::fall, {}}};
    for (auto& s : slices) {
        std::vector<char> keep(dataset.rows());
        for (std::size_t r = 0; r < keep.size(); ++r) {
            const std::chrono::year_month_day ymd{
                std::chrono::floor<std::chrono::days>(dataset.timestamps[r])};
            keep[r] = season_of_month(static_cast<unsigned>(ymd.month())) == s.season;
        }
        s.dataset = select_rows(dataset, keep);
    }
    return SeasonalSplit(std::move(slices));
}

}  // namespace scalereg
