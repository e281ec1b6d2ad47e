#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scalereg/fluctuation.hpp"
#include "scalereg/series.hpp"

namespace scalereg {

/// Two-sided 95% normal quantile used for the coefficient bands.
inline constexpr double kZ95 = 1.96;

/// Ordinary least squares fit of Y = b0 + b1 X1 + b2 X2 + e.
struct OlsFit {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double var_beta1 = 0.0;
    double var_beta2 = 0.0;
    std::vector<double> residuals;  // zero mean
    double r_squared = 0.0;
    std::array<double, 2> beta_star{};
    /// Absent when <Y> == 0.
    std::array<std::optional<double>, 2> elasticity{};
    std::size_t n = 0;
};

/// @throws InputError for N < 4 or unequal lengths.
/// @throws DegenerateError for collinear (or constant) regressors.
[[nodiscard]] OlsFit ols_fit(const TimeSeries& y, const TimeSeries& x1, const TimeSeries& x2);

struct Interval {
    double lower;
    double upper;
};

/// Scale-dependent regression coefficients and evaluation indices. Every
/// per-scale vector is aligned with `grid`; scales whose estimator
/// denominator was degenerate are omitted and listed in `warnings`.
struct DfaRegressionFit {
    ScaleGrid grid;
    int order = kDefaultDetrendOrder;
    std::size_t n = 0;

    std::vector<double> beta1;
    std::vector<double> beta2;
    std::vector<double> var_beta1;
    std::vector<double> var_beta2;
    std::vector<double> residual_fluct;  // F2_e(n)
    std::vector<double> r_squared_dfa;   // unclamped, may be negative
    std::vector<std::array<double, 2>> beta_star_dfa;
    /// Absent when <Y> == 0.
    std::vector<std::array<std::optional<double>, 2>> elasticity_dfa;
    std::vector<std::array<Interval, 2>> ci95;
    /// <Y> - b1(n) <X1> - b2(n) <X2>; derived, not estimated by the detrended fit.
    std::vector<double> implied_intercept;

    // Detrended (co)variances of the inputs at each retained scale.
    std::vector<double> f2_y;
    std::vector<double> f2_x1;
    std::vector<double> f2_x2;
    std::vector<double> f2_x1x2;
    std::vector<double> f2_x1y;
    std::vector<double> f2_x2y;

    double mean_y = 0.0;
    double mean_x1 = 0.0;
    double mean_x2 = 0.0;

    std::vector<std::string> warnings;
};

/// Zero-mean residual series y - b1 x1 - b2 x2 - <y - b1 x1 - b2 x2>.
/// @throws InputError on unequal lengths.
[[nodiscard]] TimeSeries residual_series(const TimeSeries& y, const TimeSeries& x1,
                                         const TimeSeries& x2, double beta1, double beta2);

/// Detrended-fluctuation regression at every scale in `grid`.
/// @throws DegenerateError when no scale has a usable denominator.
[[nodiscard]] DfaRegressionFit dfa_regression(const TimeSeries& y, const TimeSeries& x1,
                                              const TimeSeries& x2, const ScaleGrid& grid,
                                              int order = kDefaultDetrendOrder);

}  // namespace scalereg
