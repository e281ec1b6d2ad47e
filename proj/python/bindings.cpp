#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scalereg/coefficients.hpp"
#include "scalereg/errors.hpp"
#include "scalereg/fluctuation.hpp"
#include "scalereg/ingestion.hpp"
#include "scalereg/regression.hpp"
#include "scalereg/significance.hpp"
#include "scalereg/synthgen.hpp"
#include "scalereg/version.hpp"

namespace py = pybind11;
using namespace scalereg;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
    if (a.ndim() != 1) throw InputError("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

TimeSeries to_series(const Array& a, std::string label = {}) { return TimeSeries(to_vector(a), std::move(label)); }

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::object opt(const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); }

ScaleGrid grid_for(const std::optional<std::vector<int>>& scales, std::size_t length) {
    return scales ? ScaleGrid(*scales) : default_scale_grid(length);
}

std::vector<int> grid_list(const ScaleGrid& g) { return {g.scales().begin(), g.scales().end()}; }

McOptions mc_options(double alpha, int reps, std::uint64_t seed, unsigned threads, const std::string& pooling) {
    McOptions o;
    o.alpha = alpha;
    o.reps = reps;
    o.seed = seed;
    o.threads = threads;
    if (pooling == "pooled") {
        o.pooling = Pooling::pooled;
    } else if (pooling == "beta1") {
        o.pooling = Pooling::beta1;
    } else if (pooling == "beta2") {
        o.pooling = Pooling::beta2;
    } else {
        throw InputError("pooling must be 'pooled', 'beta1' or 'beta2'");
    }
    return o;
}

py::dict curve_dict(const McCriticalCurve& c) {
    py::dict d;
    d["scales"] = grid_list(c.grid);
    d["critical"] = to_array(c.critical);
    d["alpha"] = c.alpha;
    d["reps"] = c.reps;
    d["seed"] = c.seed;
    d["failed_reps"] = c.failed_reps;
    d["warnings"] = c.warnings;
    return d;
}

py::dict regression_dict(const DfaRegressionFit& f) {
    std::vector<double> bs1, bs2, lo1, hi1, lo2, hi2;
    py::list el1, el2;
    for (std::size_t s = 0; s < f.grid.size(); ++s) {
        bs1.push_back(f.beta_star_dfa[s][0]);
        bs2.push_back(f.beta_star_dfa[s][1]);
        el1.append(opt(f.elasticity_dfa[s][0]));
        el2.append(opt(f.elasticity_dfa[s][1]));
        lo1.push_back(f.ci95[s][0].lower);
        hi1.push_back(f.ci95[s][0].upper);
        lo2.push_back(f.ci95[s][1].lower);
        hi2.push_back(f.ci95[s][1].upper);
    }
    py::dict d;
    d["scales"] = grid_list(f.grid);
    d["beta1"] = to_array(f.beta1);
    d["beta2"] = to_array(f.beta2);
    d["var_beta1"] = to_array(f.var_beta1);
    d["var_beta2"] = to_array(f.var_beta2);
    d["residual_fluct"] = to_array(f.residual_fluct);
    d["r_squared"] = to_array(f.r_squared_dfa);
    d["beta_star1"] = to_array(bs1);
    d["beta_star2"] = to_array(bs2);
    d["elasticity1"] = el1;
    d["elasticity2"] = el2;
    d["ci1"] = py::make_tuple(to_array(lo1), to_array(hi1));
    d["ci2"] = py::make_tuple(to_array(lo2), to_array(hi2));
    d["implied_intercept"] = to_array(f.implied_intercept);
    d["warnings"] = f.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Scale-dependent regression with detrended fluctuation analysis";
    m.attr("__version__") = kVersion;

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);

    m.def(
        "profile",
        [](const Array& z) {
            const Profile p = build_profile(to_series(z));
            return to_array({p.values().begin(), p.values().end()});
        },
        py::arg("values"), "Cumulative sum of the mean-removed series.");
    m.def("log_scale_grid", [](int lo, int hi, int count) { return grid_list(log_scale_grid(lo, hi, count)); },
          py::arg("n_min"), py::arg("n_max"), py::arg("count"));
    m.def("default_scale_grid", [](std::size_t n) { return grid_list(default_scale_grid(n)); }, py::arg("length"));

    m.def(
        "dfa",
        [](const Array& z, std::optional<std::vector<int>> scales, int order) {
            const TimeSeries s = to_series(z);
            return to_array(dfa_variance(build_profile(s), grid_for(scales, s.size()), order));
        },
        py::arg("values"), py::arg("scales") = py::none(), py::arg("order") = kDefaultDetrendOrder,
        "Detrended variance F^2(n) at each scale.");
    m.def(
        "dcca",
        [](const Array& a, const Array& b, std::optional<std::vector<int>> scales, int order) {
            const TimeSeries sa = to_series(a);
            const TimeSeries sb = to_series(b);
            return to_array(dcca_covariance(build_profile(sa), build_profile(sb), grid_for(scales, sa.size()), order));
        },
        py::arg("a"), py::arg("b"), py::arg("scales") = py::none(), py::arg("order") = kDefaultDetrendOrder,
        "Detrended covariance F^2_ab(n) at each scale.");
    m.def(
        "rho_dcca",
        [](const Array& a, const Array& b, std::optional<std::vector<int>> scales, int order) {
            const std::vector<TimeSeries> s{to_series(a, "a"), to_series(b, "b")};
            return to_array(rho_dcca(fluctuation_set(s, grid_for(scales, s[0].size()), order), "a", "b"));
        },
        py::arg("a"), py::arg("b"), py::arg("scales") = py::none(), py::arg("order") = kDefaultDetrendOrder);
    m.def(
        "rho_pdcca",
        [](const std::vector<Array>& series, std::optional<std::vector<int>> scales, int order) {
            std::vector<TimeSeries> s;
            for (std::size_t i = 0; i < series.size(); ++i) s.push_back(to_series(series[i], "v" + std::to_string(i)));
            if (s.size() < 3) throw InputError("partial DCCA needs at least three series");
            const ScaleGrid grid = grid_for(scales, s[0].size());
            const DccaMatrix mat = dcca_matrix(fluctuation_set(s, grid, order));
            const std::size_t k = s.size();
            py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(grid.size()), static_cast<py::ssize_t>(k * (k - 1) / 2)});
            auto r = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const auto p = partial_coefficients(mat.values[i], k, grid[i]);
                for (std::size_t j = 0; j < p.size(); ++j) r(i, j) = p[j];
            }
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
            }
            return py::make_tuple(out, pairs);
        },
        py::arg("series"), py::arg("scales") = py::none(), py::arg("order") = kDefaultDetrendOrder,
        "Partial DCCA coefficients per scale for every pair; returns (values, pairs).");

    m.def(
        "partial_corr",
        [](const Array& x, const Array& y, const Array& control) {
            const auto p = partial_corr_classic(to_series(x), to_series(y), to_series(control));
            return py::make_tuple(p.r, p.t);
        },
        py::arg("x"), py::arg("y"), py::arg("control"), "Partial correlation r_xy.control and its t statistic.");

    m.def(
        "ols",
        [](const Array& y, const Array& x1, const Array& x2) {
            const OlsFit f = ols_fit(to_series(y), to_series(x1), to_series(x2));
            py::dict d;
            d["beta0"] = f.beta0;
            d["beta1"] = f.beta1;
            d["beta2"] = f.beta2;
            d["var_beta1"] = f.var_beta1;
            d["var_beta2"] = f.var_beta2;
            d["r_squared"] = f.r_squared;
            d["beta_star"] = py::make_tuple(f.beta_star[0], f.beta_star[1]);
            d["elasticity"] = py::make_tuple(opt(f.elasticity[0]), opt(f.elasticity[1]));
            d["residuals"] = to_array(f.residuals);
            return d;
        },
        py::arg("y"), py::arg("x1"), py::arg("x2"));
    m.def(
        "dfa_regression",
        [](const Array& y, const Array& x1, const Array& x2, std::optional<std::vector<int>> scales, int order) {
            const TimeSeries sy = to_series(y);
            return regression_dict(
                dfa_regression(sy, to_series(x1), to_series(x2), grid_for(scales, sy.size()), order));
        },
        py::arg("y"), py::arg("x1"), py::arg("x2"), py::arg("scales") = py::none(),
        py::arg("order") = kDefaultDetrendOrder);

    m.def(
        "critical_t",
        [](const Array& y, const Array& x1, const Array& x2, std::optional<std::vector<int>> scales, int order,
           double alpha, int reps, std::uint64_t seed, unsigned threads, const std::string& pooling) {
            const TimeSeries sy = to_series(y), s1 = to_series(x1), s2 = to_series(x2);
            const ScaleGrid grid = grid_for(scales, sy.size());
            const McOptions o = mc_options(alpha, reps, seed, threads, pooling);
            McCriticalCurve c;
            {
                py::gil_scoped_release release;
                c = mc_critical_t(sy, s1, s2, grid, order, o);
            }
            return curve_dict(c);
        },
        py::arg("y"), py::arg("x1"), py::arg("x2"), py::arg("scales") = py::none(),
        py::arg("order") = kDefaultDetrendOrder, py::arg("alpha") = 0.01, py::arg("reps") = 10000,
        py::arg("seed") = 0, py::arg("threads") = 0, py::arg("pooling") = "pooled",
        "Shuffle-based critical values of |t| per scale.");
    m.def(
        "critical_pdcca",
        [](const std::vector<Array>& series, std::optional<std::vector<int>> scales, int order, double alpha,
           int reps, std::uint64_t seed, unsigned threads) {
            std::vector<TimeSeries> s;
            for (const auto& a : series) s.push_back(to_series(a));
            if (s.empty()) throw InputError("no series given");
            const ScaleGrid grid = grid_for(scales, s[0].size());
            const McOptions o = mc_options(alpha, reps, seed, threads, "pooled");
            McCriticalCurve c;
            {
                py::gil_scoped_release release;
                c = mc_critical_pdcca(s, grid, order, o);
            }
            return curve_dict(c);
        },
        py::arg("series"), py::arg("scales") = py::none(), py::arg("order") = kDefaultDetrendOrder,
        py::arg("alpha") = 0.01, py::arg("reps") = 10000, py::arg("seed") = 0, py::arg("threads") = 0);

    m.def("arfima_weights", [](double d, std::size_t lag) { return to_array(arfima_weights(d, lag)); },
          py::arg("d"), py::arg("max_lag"));
    m.def(
        "arfima",
        [](double d, std::size_t length, std::uint64_t seed, std::size_t truncation) {
            return to_array(arfima_generate({d, length, truncation, seed}).data());
        },
        py::arg("d"), py::arg("length"), py::arg("seed") = 0, py::arg("truncation") = kDefaultArfimaTruncation);
    m.def(
        "bmfs",
        [](double p, int depth, std::optional<double> threshold, double noise_sd, std::uint64_t seed) {
            const TimeSeries s = bmfs_generate({p, depth, std::nullopt});
            if (!threshold) return py::make_tuple(to_array(s.data()), std::size_t{0});
            const auto e = embed_in_noise(s, *threshold, noise_sd, seed);
            return py::make_tuple(to_array(e.series.data()), std::size_t{e.replacements});
        },
        py::arg("p"), py::arg("depth"), py::arg("threshold") = py::none(), py::arg("noise_sd") = 1e-4,
        py::arg("seed") = 0, "Binomial multifractal series; returns (values, replacements).");
    m.def(
        "gaussian_noise",
        [](std::size_t length, double sd, std::uint64_t seed) { return to_array(gaussian_noise(length, sd, seed).data()); },
        py::arg("length"), py::arg("sd") = 1.0, py::arg("seed") = 0);

    m.def(
        "read_csv",
        [](const std::string& path, std::vector<std::string> columns, std::optional<std::string> timestamp_column,
           std::optional<std::string> season, std::size_t max_gap) {
            CsvSpec spec;
            spec.columns = std::move(columns);
            spec.timestamp_column = std::move(timestamp_column);
            Dataset d = clean(load_csv(path, spec), CleaningPolicy{max_gap, 0.2});
            if (season && *season != "all") d = split_seasons(d).slice(parse_season(*season)).dataset;
            py::dict out;
            for (const auto& c : d.columns) out[py::str(c.name)] = to_array(c.values);
            return out;
        },
        py::arg("path"), py::arg("columns") = std::vector<std::string>{}, py::arg("timestamp_column") = py::none(),
        py::arg("season") = py::none(), py::arg("max_gap") = 6,
        "Load, clean and optionally season-filter numeric columns from a CSV file.");
}
