#include "cli.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scalereg/coefficients.hpp"
#include "scalereg/errors.hpp"
#include "scalereg/fluctuation.hpp"
#include "scalereg/ingestion.hpp"
#include "scalereg/regression.hpp"
#include "scalereg/significance.hpp"
#include "scalereg/synthgen.hpp"
#include "scalereg/version.hpp"

namespace scalereg::cli {

using nlohmann::json;

namespace {

void note(std::ostream& log, const std::string& msg) { log << "scalereg: " << msg << '\n'; }

std::string fixed(double v, int digits = 4) {
    if (!std::isfinite(v)) return "n/a";
    std::ostringstream s;
    s.precision(digits);
    s << std::fixed << v;
    return s.str();
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

ScaleGrid make_grid(const RunConfig& c, std::size_t length) {
    if (c.scales.empty()) return default_scale_grid(length);
    int lo = 0, hi = 0, count = 0;
    char a = 0, b = 0;
    std::istringstream in(c.scales);
    if (!(in >> lo >> a >> hi >> b >> count) || a != ':' || b != ':' || !in.eof()) {
        throw InputError("--scales expects MIN:MAX:COUNT, got '" + c.scales + "'");
    }
    ScaleGrid grid = log_scale_grid(lo, hi, count);
    grid.validate_for(length);
    return grid;
}

Pooling parse_pooling(const std::string& s) {
    if (s == "pooled") return Pooling::pooled;
    if (s == "beta1") return Pooling::beta1;
    if (s == "beta2") return Pooling::beta2;
    throw InputError("unknown pooling '" + s + "'");
}

/// Loads, cleans and season-filters the requested columns (all when empty).
std::vector<TimeSeries> load_series(const RunConfig& c, const std::vector<std::string>& names,
                                    std::ostream& log, ResultBundle& bundle) {
    if (c.input.empty()) throw InputError("--input is required");
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            if (names[i] == names[j]) throw InputError("column '" + names[i] + "' is used twice");
        }
    }
    CsvSpec spec;
    spec.columns = names;
    spec.delimiter = c.delimiter;
    if (!c.timestamp_col.empty()) spec.timestamp_column = c.timestamp_col;

    const Dataset raw = load_csv(c.input, spec);
    note(log, "read " + std::to_string(raw.rows()) + " rows from " + c.input);
    for (const auto& entry : raw.log) note(log, entry);

    Dataset data = clean(raw, CleaningPolicy{c.max_gap, 0.2});
    for (std::size_t i = raw.log.size(); i < data.log.size(); ++i) note(log, data.log[i]);
    if (data.rows() != raw.rows()) {
        bundle.warnings.push_back("cleaning dropped " + std::to_string(raw.rows() - data.rows()) + " rows");
    }

    if (c.season != "all") {
        const Season season = parse_season(c.season);
        if (!data.has_timestamps()) throw InputError("--season needs --timestamp-col");
        data = split_seasons(data).slice(season).dataset;
        note(log, c.season + ": " + std::to_string(data.rows()) + " rows");
    }
    bundle.summary["rows"] = data.rows();

    std::vector<TimeSeries> out;
    for (const auto& col : data.columns) out.push_back(data.series(col.name));
    return out;
}

std::vector<std::string> regression_columns(const RunConfig& c) {
    if (c.y_col.empty() || c.x1_col.empty() || c.x2_col.empty()) {
        throw InputError("--y-col, --x1-col and --x2-col are required");
    }
    return {c.y_col, c.x1_col, c.x2_col};
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

json RunConfig::to_json() const {
    json j;
    j["command"] = command;
    j["input"] = input;
    j["y_col"] = y_col;
    j["x1_col"] = x1_col;
    j["x2_col"] = x2_col;
    j["columns"] = columns;
    j["timestamp_col"] = timestamp_col;
    j["delimiter"] = std::string(1, delimiter);
    j["max_gap"] = max_gap;
    j["scales"] = scales.empty() ? json("default") : json(scales);
    j["order"] = order;
    j["alpha"] = alpha;
    j["reps"] = reps;
    j["seed"] = seed;
    j["threads"] = threads;
    j["pooling"] = pooling;
    j["bins"] = bins;
    j["season"] = season;
    j["format"] = format == Format::csv ? "csv" : "json";
    j["out_dir"] = out_dir;
    if (command == "synth") {
        j["kind"] = kind;
        j["length"] = length;
        j["d"] = d;
        j["d_eps"] = d_eps;
        j["truncation"] = truncation;
        j["p"] = p;
        j["depth"] = depth;
        j["contaminate"] = contaminate;
        j["threshold"] = threshold;
        j["noise_sd"] = noise_sd;
        j["betas"] = {beta0, beta1, beta2};
    }
    return j;
}

ResultBundle cmd_dfa(const RunConfig& c, std::ostream& log) {
    ResultBundle bundle;
    std::vector<std::string> names = c.columns;
    if (names.empty()) {
        for (const auto* n : {&c.y_col, &c.x1_col, &c.x2_col}) {
            if (!n->empty()) names.push_back(*n);
        }
    }
    const auto series = load_series(c, names, log, bundle);
    const ScaleGrid grid = make_grid(c, series.front().size());
    const FluctuationSet f = fluctuation_set(series, grid, c.order);

    Table t{"fluctuation", {"scale"}, {}};
    for (const auto& label : f.labels()) t.columns.push_back("F2_" + label);
    for (std::size_t s = 0; s < grid.size(); ++s) {
        std::vector<json> row{grid[s]};
        for (std::size_t v = 0; v < f.variable_count(); ++v) row.push_back(number(f.variance(v, s)));
        t.add_row(std::move(row));
    }
    bundle.tables.push_back(std::move(t));

    json slopes = json::object();
    std::string headline = "dfa: " + std::to_string(grid.size()) + " scales;";
    for (const auto& label : f.labels()) {
        const auto f2 = f.variance(label);
        const auto slope = fluctuation_slope(grid, f2);
        slopes[label] = optional_number(slope);
        if (!slope) bundle.warnings.push_back("slope undefined for '" + label + "': no positive fluctuation");
        headline += " " + label + " slope=" + (slope ? fixed(*slope, 3) : std::string("n/a"));
    }
    bundle.summary["slopes"] = slopes;
    bundle.headline = headline;
    return bundle;
}

ResultBundle cmd_regress(const RunConfig& c, std::ostream& log) {
    ResultBundle bundle;
    const auto series = load_series(c, regression_columns(c), log, bundle);
    const TimeSeries& y = series[0];
    const TimeSeries& x1 = series[1];
    const TimeSeries& x2 = series[2];
    const ScaleGrid grid = make_grid(c, y.size());

    const OlsFit ols = ols_fit(y, x1, x2);
    const DfaRegressionFit fit = dfa_regression(y, x1, x2, grid, c.order);
    append(bundle.warnings, fit.warnings);

    Table reg{"regression",
              {"scale", "beta1", "beta2", "var_beta1", "var_beta2", "r2_dfa", "beta_star1", "beta_star2",
               "elasticity1", "elasticity2", "implied_intercept", "f2_eps", "f2_y", "f2_x1", "f2_x2",
               "f2_x1x2", "f2_x1y", "f2_x2y", "ols_beta1", "ols_beta2", "ols_r2"},
              {}};
    Table band1{"beta1_band", {"scale", "lower", "beta1", "upper"}, {}};
    Table band2{"beta2_band", {"scale", "lower", "beta2", "upper"}, {}};
    for (std::size_t s = 0; s < fit.grid.size(); ++s) {
        const int n = fit.grid[s];
        reg.add_row({n, number(fit.beta1[s]), number(fit.beta2[s]), number(fit.var_beta1[s]),
                     number(fit.var_beta2[s]), number(fit.r_squared_dfa[s]),
                     number(fit.beta_star_dfa[s][0]), number(fit.beta_star_dfa[s][1]),
                     optional_number(fit.elasticity_dfa[s][0]), optional_number(fit.elasticity_dfa[s][1]),
                     number(fit.implied_intercept[s]), number(fit.residual_fluct[s]), number(fit.f2_y[s]),
                     number(fit.f2_x1[s]), number(fit.f2_x2[s]), number(fit.f2_x1x2[s]),
                     number(fit.f2_x1y[s]), number(fit.f2_x2y[s]), number(ols.beta1), number(ols.beta2),
                     number(ols.r_squared)});
        band1.add_row({n, number(fit.ci95[s][0].lower), number(fit.beta1[s]), number(fit.ci95[s][0].upper)});
        band2.add_row({n, number(fit.ci95[s][1].lower), number(fit.beta2[s]), number(fit.ci95[s][1].upper)});
    }
    bundle.tables.push_back(std::move(reg));
    bundle.tables.push_back(std::move(band1));
    bundle.tables.push_back(std::move(band2));

    bundle.summary["ols"] = {
        {"n", ols.n},
        {"beta0", number(ols.beta0)},
        {"beta1", number(ols.beta1)},
        {"beta2", number(ols.beta2)},
        {"var_beta1", number(ols.var_beta1)},
        {"var_beta2", number(ols.var_beta2)},
        {"r_squared", number(ols.r_squared)},
        {"beta_star", {number(ols.beta_star[0]), number(ols.beta_star[1])}},
        {"elasticity", {optional_number(ols.elasticity[0]), optional_number(ols.elasticity[1])}},
    };
    bundle.summary["scales"] = fit.grid.size();
    bundle.headline = "regress: N=" + std::to_string(y.size()) + ", " + std::to_string(fit.grid.size()) +
                      " scales; OLS beta1=" + fixed(ols.beta1) + " beta2=" + fixed(ols.beta2) +
                      "; DFA beta1 " + fixed(fit.beta1.front()) + ".." + fixed(fit.beta1.back()) +
                      ", beta2 " + fixed(fit.beta2.front()) + ".." + fixed(fit.beta2.back());
    return bundle;
}

namespace {

/// Flags for `observed` on `grid` against a curve whose grid may have dropped scales.
std::vector<json> flags_for(const McCriticalCurve& curve, const ScaleGrid& grid,
                            const std::vector<double>& observed) {
    std::vector<int> common;
    std::vector<double> values;
    McCriticalCurve sub = curve;
    sub.critical.clear();
    for (std::size_t s = 0; s < grid.size(); ++s) {
        const auto crit = curve.critical_at(grid[s]);
        if (!crit || std::isnan(observed[s])) continue;
        common.push_back(grid[s]);
        values.push_back(observed[s]);
        sub.critical.push_back(*crit);
    }
    std::vector<json> out(grid.size(), nullptr);
    if (common.empty()) return out;
    sub.grid = ScaleGrid(common);
    const auto flags = decide(sub, sub.grid, values);
    std::size_t k = 0;
    for (std::size_t s = 0; s < grid.size() && k < common.size(); ++s) {
        if (grid[s] == common[k]) out[s] = static_cast<bool>(flags[k++]);
    }
    return out;
}

std::size_t count_true(const std::vector<json>& flags) {
    std::size_t n = 0;
    for (const auto& f : flags) n += f.is_boolean() && f.get<bool>();
    return n;
}

}  // namespace

ResultBundle cmd_significance(const RunConfig& c, std::ostream& log) {
    ResultBundle bundle;
    const auto series = load_series(c, regression_columns(c), log, bundle);
    const TimeSeries& y = series[0];
    const TimeSeries& x1 = series[1];
    const TimeSeries& x2 = series[2];
    const ScaleGrid grid = make_grid(c, y.size());

    McOptions opt;
    opt.alpha = c.alpha;
    opt.reps = c.reps;
    opt.threads = c.threads;
    opt.pooling = parse_pooling(c.pooling);
    opt.histogram_bins = c.bins;

    const DfaRegressionFit fit = dfa_regression(y, x1, x2, grid, c.order);
    append(bundle.warnings, fit.warnings);
    const ScaleTStat t = t_statistics(fit);
    append(bundle.warnings, t.warnings);

    opt.seed = derive_seed(c.seed, 0);
    note(log, "t critical curve: " + std::to_string(c.reps) + " shuffled replications");
    const McCriticalCurve tc = mc_critical_t(y, x1, x2, grid, c.order, opt);
    append(bundle.warnings, tc.warnings);

    const auto flag1 = flags_for(tc, t.grid, t.t1);
    const auto flag2 = flags_for(tc, t.grid, t.t2);
    Table tt{"t_statistics", {"scale", "t1", "t2", "t_critical", "reject1", "reject2"}, {}};
    for (std::size_t s = 0; s < t.grid.size(); ++s) {
        tt.add_row({t.grid[s], number(t.t1[s]), number(t.t2[s]), optional_number(tc.critical_at(t.grid[s])),
                    flag1[s], flag2[s]});
    }
    bundle.tables.push_back(std::move(tt));

    Table dist{"t_null_distribution", {"scale", "count", "mean", "sd", "skewness", "excess_kurtosis"}, {}};
    Table hist{"t_null_histogram", {"scale", "bin_lower", "bin_upper", "count"}, {}};
    for (std::size_t s = 0; s < tc.grid.size(); ++s) {
        const auto& d = tc.distribution[s];
        dist.add_row({tc.grid[s], d.count, number(d.mean), number(d.sd), number(d.skewness),
                      number(d.excess_kurtosis)});
        for (std::size_t b = 0; b < d.bin_counts.size(); ++b) {
            hist.add_row({tc.grid[s], number(d.bin_edges[b]), number(d.bin_edges[b + 1]), d.bin_counts[b]});
        }
    }
    bundle.tables.push_back(std::move(dist));
    if (c.bins > 0) bundle.tables.push_back(std::move(hist));

    // partial DCCA for every pair of the three variables
    const std::vector<std::string> labels{"y", "x1", "x2"};
    std::vector<TimeSeries> relabelled;
    for (std::size_t i = 0; i < 3; ++i) relabelled.emplace_back(series[i].data(), labels[i]);
    const DccaMatrix m = dcca_matrix(fluctuation_set(relabelled, grid, c.order));
    std::vector<std::array<double, 3>> partial(grid.size());
    for (std::size_t s = 0; s < grid.size(); ++s) {
        try {
            const auto p = partial_coefficients(m.values[s], 3, grid[s]);
            partial[s] = {p[0], p[1], p[2]};
        } catch (const DegenerateError& e) {
            partial[s].fill(std::nan(""));
            bundle.warnings.push_back(e.what());
        }
    }
    opt.seed = derive_seed(c.seed, 1);
    note(log, "partial DCCA critical curve: " + std::to_string(c.reps) + " shuffled replications");
    const McCriticalCurve pc = mc_critical_pdcca(relabelled, grid, c.order, opt);
    append(bundle.warnings, pc.warnings);

    const std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    std::array<std::vector<json>, 3> pflags;
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<double> obs(grid.size());
        for (std::size_t s = 0; s < grid.size(); ++s) obs[s] = partial[s][k];
        pflags[k] = flags_for(pc, grid, obs);
    }
    Table pt{"pdcca", {"scale"}, {}};
    for (const auto& [a, b] : pairs) pt.columns.push_back("rho_dcca_" + labels[a] + "_" + labels[b]);
    for (const auto& [a, b] : pairs) pt.columns.push_back("rho_pdcca_" + labels[a] + "_" + labels[b]);
    pt.columns.push_back("pdcca_critical");
    for (const auto& [a, b] : pairs) pt.columns.push_back("reject_" + labels[a] + "_" + labels[b]);
    for (std::size_t s = 0; s < grid.size(); ++s) {
        std::vector<json> row{grid[s]};
        for (const auto& [a, b] : pairs) row.push_back(number(m.at(s, a, b)));
        for (std::size_t k = 0; k < 3; ++k) row.push_back(number(partial[s][k]));
        row.push_back(optional_number(pc.critical_at(grid[s])));
        for (std::size_t k = 0; k < 3; ++k) row.push_back(pflags[k][s]);
        pt.add_row(std::move(row));
    }
    bundle.tables.push_back(std::move(pt));

    bundle.summary["t_seed"] = derive_seed(c.seed, 0);
    bundle.summary["pdcca_seed"] = derive_seed(c.seed, 1);
    bundle.summary["failed_reps"] = {{"t", tc.failed_reps}, {"pdcca", pc.failed_reps}};
    bundle.summary["rejections"] = {{"beta1", count_true(flag1)},
                                    {"beta2", count_true(flag2)},
                                    {"pdcca_y_x1", count_true(pflags[0])},
                                    {"pdcca_y_x2", count_true(pflags[1])},
                                    {"pdcca_x1_x2", count_true(pflags[2])}};
    bundle.headline = "significance: alpha=" + fixed(c.alpha, 3) + ", reps=" + std::to_string(c.reps) +
                      "; beta1 significant at " + std::to_string(count_true(flag1)) + "/" +
                      std::to_string(t.grid.size()) + " scales, beta2 at " + std::to_string(count_true(flag2)) +
                      "/" + std::to_string(t.grid.size());
    return bundle;
}

ResultBundle cmd_synth(const RunConfig& c, std::ostream& log) {
    ResultBundle bundle;
    Dataset out;
    out.source = "synth";
    json seeds = json::object();
    auto add = [&](const std::string& name, const TimeSeries& s) { out.columns.push_back({name, s.data()}); };

    if (c.kind == "arfima") {
        const auto seed = derive_seed(c.seed, 0);
        add("x", arfima_generate({c.d, c.length, c.truncation, seed}));
        seeds["x"] = seed;
    } else if (c.kind == "bmfs") {
        const auto clean_series = bmfs_generate({c.p, c.depth, std::nullopt});
        if (c.contaminate) {
            const auto seed = derive_seed(c.seed, 0);
            const auto e = embed_in_noise(clean_series, c.threshold, c.noise_sd, seed);
            add("x", e.series);
            seeds["contamination"] = seed;
            bundle.summary["replacements"] = e.replacements;
            note(log, std::to_string(e.replacements) + " values below " + fixed(c.threshold, 8) +
                          " replaced by noise");
        } else {
            add("x", clean_series);
        }
    } else if (c.kind == "regression") {
        const auto s1 = derive_seed(c.seed, 0);
        const auto s2 = derive_seed(c.seed, 1);
        const auto se = derive_seed(c.seed, 2);
        const auto x1 = arfima_generate({c.d, c.length, c.truncation, s1});
        const auto x2 = arfima_generate({c.d, c.length, c.truncation, s2});
        const auto e = arfima_generate({c.d_eps, c.length, c.truncation, se});
        add("x1", x1);
        add("x2", x2);
        add("y", make_regression_dataset(x1, x2, c.beta0, c.beta1, c.beta2, e));
        seeds["x1"] = s1;
        seeds["x2"] = s2;
        seeds["error"] = se;
    } else {
        throw InputError("unknown synth kind '" + c.kind + "'");
    }

    std::filesystem::create_directories(c.out_dir);
    const auto path = std::filesystem::path(c.out_dir) / "series.csv";
    write_csv(out, path);
    bundle.summary["series_file"] = path.string();
    bundle.summary["generator"] = kGeneratorName;
    bundle.summary["seeds"] = seeds;
    bundle.summary["rows"] = out.rows();
    bundle.headline = "synth: " + c.kind + ", " + std::to_string(out.rows()) + " rows, " +
                      std::to_string(out.columns.size()) + " column(s) -> " + path.string();
    return bundle;
}

ResultBundle cmd_partial(const RunConfig& c, std::ostream& log) {
    ResultBundle bundle;
    std::vector<std::string> names = c.columns;
    if (names.empty()) names = regression_columns(c);
    if (names.size() != 3) throw InputError("partial correlation needs exactly three columns");
    const auto series = load_series(c, names, log, bundle);

    Table t{"partial", {"x", "y", "control", "r", "t", "n", "p_value", "t_critical", "significant", "note"}, {}};
    const std::array<std::array<std::size_t, 3>, 3> combos{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    std::size_t significant = 0;
    for (const auto& [a, b, ctl] : combos) {
        const std::size_t n = series[a].size();
        const double df = static_cast<double>(n) - 3.0;
        const boost::math::students_t dist(df);
        const double crit = boost::math::quantile(boost::math::complement(dist, c.alpha / 2.0));
        try {
            const auto pc = partial_corr_classic(series[a], series[b], series[ctl]);
            const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(pc.t)));
            const bool sig = std::abs(pc.t) > crit;
            significant += sig;
            t.add_row({names[a], names[b], names[ctl], number(pc.r), number(pc.t), n, number(p), number(crit),
                       sig, nullptr});
        } catch (const DegenerateError& e) {
            bundle.warnings.push_back(names[a] + "/" + names[b] + " given " + names[ctl] + ": " + e.what());
            t.add_row({names[a], names[b], names[ctl], nullptr, nullptr, n, nullptr, number(crit), nullptr,
                       e.what()});
        }
    }
    bundle.tables.push_back(std::move(t));
    bundle.headline = "partial: " + std::to_string(significant) + " of 3 partial correlations significant at alpha=" +
                      fixed(c.alpha, 3);
    return bundle;
}

namespace {

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    return format_timestamp(std::chrono::floor<std::chrono::seconds>(now)) + "Z";
}

void add_data_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--input", c.input, "Input CSV file")->required();
    sub->add_option("--timestamp-col", c.timestamp_col, "Timestamp column (ISO 8601)");
    sub->add_option("--season", c.season, "Season filter")
        ->check(CLI::IsMember({"winter", "spring", "summer", "fall", "all"}));
    sub->add_option("--delimiter", c.delimiter, "Field delimiter");
    sub->add_option("--max-gap", c.max_gap, "Longest gap filled by interpolation");
}

void add_scale_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--scales", c.scales, "Log-spaced grid MIN:MAX:COUNT");
    sub->add_option("--order", c.order, "Detrending polynomial order")->check(CLI::Range(0, kMaxDetrendOrder));
}

void add_regression_columns(CLI::App* sub, RunConfig& c) {
    sub->add_option("--y-col", c.y_col, "Response column");
    sub->add_option("--x1-col", c.x1_col, "First regressor column");
    sub->add_option("--x2-col", c.x2_col, "Second regressor column");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    std::string format = "csv";
    CLI::App app{"Scale-dependent regression with detrended fluctuation analysis", "scalereg"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    app.add_option("--seed", c.seed, "Base random seed")->envname("SCALEREG_SEED");
    app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out-dir", c.out_dir, "Output directory");
    app.add_flag("-q,--quiet", c.quiet, "No progress messages");
    app.fallthrough();

    auto* dfa = app.add_subcommand("dfa", "Detrended fluctuation functions and slopes");
    add_data_options(dfa, c);
    add_scale_options(dfa, c);
    add_regression_columns(dfa, c);
    dfa->add_option("--columns", c.columns, "Columns to analyse (default: all)");

    auto* regress = app.add_subcommand("regress", "OLS and scale-dependent DFA regression");
    add_data_options(regress, c);
    add_scale_options(regress, c);
    add_regression_columns(regress, c);

    auto* sig = app.add_subcommand("significance", "t statistics, partial DCCA and shuffled critical curves");
    add_data_options(sig, c);
    add_scale_options(sig, c);
    add_regression_columns(sig, c);
    sig->add_option("--alpha", c.alpha, "Significance level");
    sig->add_option("--reps", c.reps, "Monte Carlo replications");
    sig->add_option("--threads", c.threads, "Worker threads (0: all cores)");
    sig->add_option("--pooling", c.pooling, "Null distribution for t")
        ->check(CLI::IsMember({"pooled", "beta1", "beta2"}));
    sig->add_option("--bins", c.bins, "Histogram bins for the null distribution");

    auto* synth = app.add_subcommand("synth", "Generate synthetic series");
    synth->add_option("--kind", c.kind, "arfima, bmfs or regression")
        ->check(CLI::IsMember({"arfima", "bmfs", "regression"}));
    synth->add_option("--length", c.length, "Series length (arfima, regression)");
    synth->add_option("--d", c.d, "Fractional integration parameter");
    synth->add_option("--d-eps", c.d_eps, "Fractional parameter of the regression error");
    synth->add_option("--truncation", c.truncation, "MA truncation lag");
    synth->add_option("--p", c.p, "Cascade multiplier");
    synth->add_option("--depth", c.depth, "Cascade depth (length 2^depth)");
    synth->add_flag("--contaminate", c.contaminate, "Embed small cascade values in noise");
    synth->add_option("--threshold", c.threshold, "Contamination threshold");
    synth->add_option("--noise-sd", c.noise_sd, "Contamination noise standard deviation");
    synth->add_option("--beta0", c.beta0);
    synth->add_option("--beta1", c.beta1);
    synth->add_option("--beta2", c.beta2);

    auto* partial = app.add_subcommand("partial", "Partial correlations and t statistics");
    add_data_options(partial, c);
    add_regression_columns(partial, c);
    partial->add_option("--columns", c.columns, "Exactly three columns");
    partial->add_option("--alpha", c.alpha, "Significance level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
    }
    c.format = format == "json" ? Format::json : Format::csv;
    c.command = app.get_subcommands().front()->get_name();

    std::ofstream null_stream;
    std::ostream& log = c.quiet ? static_cast<std::ostream&>(null_stream) : err;
    const auto started = std::chrono::steady_clock::now();
    const std::string started_at = iso_now();

    try {
        if (c.command == "significance" || c.command == "partial") {
            if (!(c.alpha > 0.0 && c.alpha <= 0.5)) throw InputError("--alpha must lie in (0, 0.5]");
        }
        if (c.command == "significance" && c.reps < 100) throw InputError("--reps must be at least 100");
        ResultBundle bundle;
        if (c.command == "dfa") bundle = cmd_dfa(c, log);
        if (c.command == "regress") bundle = cmd_regress(c, log);
        if (c.command == "significance") bundle = cmd_significance(c, log);
        if (c.command == "synth") bundle = cmd_synth(c, log);
        if (c.command == "partial") bundle = cmd_partial(c, log);

        std::filesystem::create_directories(c.out_dir);
        json files = json::array();
        for (const auto& t : bundle.tables) files.push_back(write_table(t, c.out_dir, c.format).string());
        for (const auto& w : bundle.warnings) note(log, "warning: " + w);

        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        json meta;
        meta["command"] = c.command;
        meta["argv"] = std::vector<std::string>(argv, argv + argc);
        meta["config"] = c.to_json();
        meta["version"] = kVersion;
        meta["generator"] = kGeneratorName;
        meta["seed"] = c.seed;
        meta["timing"] = {{"started", started_at}, {"elapsed_seconds", elapsed}};
        meta["warnings"] = bundle.warnings;
        meta["outputs"] = files;
        meta["summary"] = bundle.summary;
        const auto meta_path = std::filesystem::path(c.out_dir) / "metadata.json";
        std::ofstream mf(meta_path);
        if (!mf) throw InputError("cannot write " + meta_path.string());
        mf << meta.dump(2) << '\n';

        out << bundle.headline << '\n';
        return kExitOk;
    } catch (const InputError& e) {
        err << "scalereg: error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DegenerateError& e) {
        err << "scalereg: numerical degeneracy: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << "scalereg: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace scalereg::cli
