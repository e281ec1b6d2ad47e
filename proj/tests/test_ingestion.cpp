#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "scalereg/errors.hpp"
#include "scalereg/ingestion.hpp"

using namespace scalereg;
using namespace std::chrono;

namespace {

Dataset parse(const std::string& text, CsvSpec spec = {}) {
    std::istringstream in(text);
    return parse_csv(in, spec, "memory");
}

Dataset with_column(std::vector<double> values) {
    Dataset d;
    d.columns.push_back({"v", std::move(values)});
    return d;
}

// Hourly rows from `first` (inclusive) to `last` (exclusive).
Dataset hourly(sys_days first, sys_days last) {
    Dataset d;
    d.timestamp_name = "time";
    d.columns.push_back({"pm", {}});
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 300);
    for (auto t = sys_seconds(first); t < sys_seconds(last); t += hours(1)) {
        d.timestamps.push_back(t);
        d.columns[0].values.push_back(u(rng));
    }
    return d;
}

bool same_rows(const Dataset& a, const Dataset& b) {
    if (a.timestamps != b.timestamps || a.columns.size() != b.columns.size()) return false;
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
        if (a.columns[c].values != b.columns[c].values) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("timestamps") {
    const auto t = parse_timestamp("2013-12-01T05:30:00");
    REQUIRE(t.has_value());
    CHECK(*t == sys_days(2013y / December / 1) + hours(5) + minutes(30));
    CHECK(parse_timestamp("2013-12-01 05:30") == t);
    CHECK(parse_timestamp("2013-12-01T05:30:00Z") == t);
    CHECK(parse_timestamp("2016-02-29") == sys_seconds(sys_days(2016y / February / 29)));
    CHECK_FALSE(parse_timestamp("2015-02-29").has_value());
    CHECK_FALSE(parse_timestamp("2015-13-01").has_value());
    CHECK_FALSE(parse_timestamp("2015-01-01T25:00").has_value());
    CHECK_FALSE(parse_timestamp("yesterday").has_value());
    CHECK(format_timestamp(*t) == "2013-12-01T05:30:00");
}

TEST_CASE("load a clean file") {
    std::string text = "time,a,b,c\n";
    for (int i = 0; i < 10; ++i) {
        text += "2014-01-01T0" + std::to_string(i) + ":00:00," + std::to_string(i) + "," +
                std::to_string(2 * i) + ".5," + std::to_string(-i) + "e-3\n";
    }
    CsvSpec spec;
    spec.timestamp_column = "time";
    const Dataset d = parse(text, spec);
    CHECK(d.columns.size() == 3);
    CHECK(d.rows() == 10);
    CHECK(d.timestamps.size() == 10);
    CHECK_FALSE(d.has_missing());
    CHECK(d.column("b").values[3] == 6.5);
    CHECK(d.series("c")[4] == -4e-3);
    CHECK(d.series("a").label() == "a");
    CHECK_THROWS_WITH(d.column("nope"), doctest::Contains("missing column 'nope'"));

    spec.columns = {"c", "a"};
    const Dataset sel = parse(text, spec);
    REQUIRE(sel.columns.size() == 2);
    CHECK(sel.columns[0].name == "c");
    spec.columns = {"a", "zzz"};
    CHECK_THROWS_WITH(parse(text, spec), doctest::Contains("missing column 'zzz'"));
}

TEST_CASE("blank and malformed cells") {
    const Dataset d = parse("a,b\n1,2\n,4\n5,x\n7,8\n");
    CHECK(d.rows() == 4);
    CHECK(std::isnan(d.column("a").values[1]));
    CHECK(std::isnan(d.column("b").values[2]));
    CHECK(d.has_missing());
    CHECK(d.log.size() == 2);
    CHECK_THROWS_AS(d.series("a"), InputError);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse(""), InputError);
    CHECK_THROWS_AS(parse("a,b\n"), InputError);
    CsvSpec spec;
    spec.timestamp_column = "t";
    CHECK_THROWS_AS(parse("t,a\n2014-01-01T01:00,1\n2014-01-01T01:00,2\n", spec), InputError);
    CHECK_THROWS_AS(parse("a\n1\n", spec), InputError);
    const Dataset skipped = parse("t,a\nnot-a-date,1\n2014-01-01,2\n", spec);
    CHECK(skipped.rows() == 1);
    CHECK(skipped.log.size() == 1);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", {}), InputError);
}

TEST_CASE("delimiter and BOM") {
    CsvSpec spec;
    spec.delimiter = ';';
    const Dataset d = parse("\xEF\xBB\xBFx;y\n1.5;2\n3;4\n", spec);
    CHECK(d.column("x").values == std::vector<double>{1.5, 3});
}

TEST_CASE("csv round trip") {
    Dataset d = hourly(sys_days(2014y / March / 1), sys_days(2014y / March / 3));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0, 1e3);
    std::vector<double> other(d.rows());
    for (double& v : other) v = g(rng) * 1e-7;
    other[3] = std::nan("");
    d.columns.push_back({"tiny", other});

    const auto path = std::filesystem::temp_directory_path() / "scalereg_roundtrip.csv";
    write_csv(d, path);
    CsvSpec spec;
    spec.timestamp_column = "time";
    const Dataset back = load_csv(path, spec);
    std::filesystem::remove(path);

    REQUIRE(back.rows() == d.rows());
    CHECK(back.timestamps == d.timestamps);
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t r = 0; r < d.rows(); ++r) {
            const double a = d.columns[c].values[r];
            const double b = back.columns[c].values[r];
            if (std::isnan(a)) {
                CHECK(std::isnan(b));
            } else {
                CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
            }
        }
    }
}

TEST_CASE("cleaning") {
    SUBCASE("no gaps is the identity") {
        const Dataset d = with_column({1, 2, 3});
        const Dataset c = clean(d);
        CHECK(c.columns[0].values == d.columns[0].values);
        CHECK(c.log.empty());
    }
    SUBCASE("single gap is interpolated") {
        const Dataset c = clean(with_column({1, 2, NAN, 4, 5}));
        CHECK(c.columns[0].values == std::vector<double>{1, 2, 3, 4, 5});
        CHECK(c.log.size() == 1);
    }
    SUBCASE("gap of max_gap is interpolated linearly") {
        std::vector<double> v(40, 0.0);
        for (int i = 0; i < 40; ++i) v[i] = i;
        for (int i = 10; i < 16; ++i) v[i] = NAN;
        const Dataset c = clean(with_column(v));
        for (int i = 0; i < 40; ++i) CHECK(c.columns[0].values[i] == doctest::Approx(i));
    }
    SUBCASE("gap of max_gap + 1 drops rows in every column") {
        Dataset d = hourly(sys_days(2014y / June / 1), sys_days(2014y / June / 3));
        d.columns.push_back({"other", std::vector<double>(d.rows(), 1.0)});
        for (int i = 10; i < 17; ++i) d.columns[0].values[i] = NAN;
        const Dataset c = clean(d);
        CHECK(c.rows() == d.rows() - 7);
        CHECK(c.columns[1].values.size() == c.rows());
        CHECK(c.timestamps.size() == c.rows());
        CHECK(c.timestamps[10] == d.timestamps[17]);
        CHECK_FALSE(c.has_missing());
    }
    SUBCASE("edge gaps are dropped") {
        const Dataset c = clean(with_column({NAN, 1, 2, 3, 4, 5, 6, 7, 8, NAN}));
        CHECK(c.columns[0].values == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
    }
    SUBCASE("too sparse") {
        std::vector<double> v(20, 1.0);
        for (int i = 5; i < 10; ++i) v[i] = NAN;
        CHECK_NOTHROW(clean(with_column(v), {4, 0.25}));
        CHECK_THROWS_WITH(clean(with_column(v), {4, 0.2}), doctest::Contains("data too sparse"));
    }
    SUBCASE("idempotent") {
        Dataset d = hourly(sys_days(2014y / June / 1), sys_days(2014y / June / 10));
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::size_t> pos(0, d.rows() - 1);
        std::uniform_int_distribution<int> len(1, 9);
        for (int k = 0; k < 6; ++k) {
            const std::size_t p = pos(rng);
            const int l = len(rng);
            for (std::size_t i = p; i < std::min(d.rows(), p + l); ++i) d.columns[0].values[i] = NAN;
        }
        const Dataset once = clean(d);
        CHECK(same_rows(clean(once), once));
    }
}

TEST_CASE("seasons") {
    CHECK(season_of_month(12) == Season::winter);
    CHECK(season_of_month(2) == Season::winter);
    CHECK(season_of_month(3) == Season::spring);
    CHECK(season_of_month(8) == Season::summer);
    CHECK(season_of_month(11) == Season::fall);
    CHECK_THROWS_AS(season_of_month(13), InputError);
    CHECK(parse_season("fall") == Season::fall);
    CHECK(season_name(Season::winter) == "winter");
    CHECK_THROWS_AS(parse_season("autumn-ish"), InputError);
}

TEST_CASE("seasonal split") {
    SUBCASE("july only") {
        const auto split = split_seasons(hourly(sys_days(2015y / July / 1), sys_days(2015y / August / 1)));
        CHECK(split.slice(Season::summer).dataset.rows() == 31 * 24);
        CHECK_THROWS_AS(split.slice(Season::winter), InputError);
        CHECK_THROWS_AS(split.slice(Season::spring), InputError);
        CHECK(split.rows(Season::fall) == 0);
    }
    SUBCASE("december and january share a winter") {
        const auto split = split_seasons(hourly(sys_days(2013y / December / 30), sys_days(2014y / January / 2)));
        CHECK(split.rows(Season::winter) == 3 * 24);
    }
    SUBCASE("three years of hourly data") {
        const Dataset d = hourly(sys_days(2013y / December / 1), sys_days(2016y / December / 1));
        const auto split = split_seasons(d);
        // 90 + 90 + 91 winter days (Feb 2016 is a leap month)
        CHECK(split.rows(Season::winter) == 6504);
        CHECK(split.rows(Season::spring) == 3 * 92 * 24);
        CHECK(split.rows(Season::summer) == 3 * 92 * 24);
        CHECK(split.rows(Season::fall) == 3 * 91 * 24);

        std::size_t total = 0;
        std::vector<Timestamp> all;
        for (Season s : {Season::winter, Season::spring, Season::summer, Season::fall}) {
            const auto& slice = split.slice(s).dataset;
            total += slice.rows();
            CHECK(std::is_sorted(slice.timestamps.begin(), slice.timestamps.end()));
            for (auto t : slice.timestamps) {
                const year_month_day ymd{floor<days>(t)};
                CHECK(season_of_month(static_cast<unsigned>(ymd.month())) == s);
                all.push_back(t);
            }
        }
        CHECK(total == d.rows());
        std::sort(all.begin(), all.end());
        CHECK(all == d.timestamps);
    }
    CHECK_THROWS_AS(split_seasons(with_column({1, 2, 3})), InputError);
}
