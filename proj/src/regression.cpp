#include "scalereg/regression.hpp"

#include <cmath>
#include <string>

#include "scalereg/errors.hpp"

namespace scalereg {

namespace {

constexpr double kSingularTolerance = 1e-12;

void require_same_length(const TimeSeries& y, const TimeSeries& x1, const TimeSeries& x2) {
    if (y.size() != x1.size() || y.size() != x2.size()) {
        throw InputError("length mismatch: y=" + std::to_string(y.size()) +
                         ", x1=" + std::to_string(x1.size()) + ", x2=" + std::to_string(x2.size()));
    }
}

std::optional<double> elasticity(double beta, double mean_x, double mean_y) {
    if (mean_y == 0.0) return std::nullopt;
    return beta * mean_x / mean_y;
}

}  // namespace

OlsFit ols_fit(const TimeSeries& y, const TimeSeries& x1, const TimeSeries& x2) {
    require_same_length(y, x1, x2);
    const std::size_t n = y.size();
    if (n < 4) throw InputError("regression needs N >= 4, got " + std::to_string(n));

    const double my = mean(y);
    const double m1 = mean(x1);
    const double m2 = mean(x2);

    double s11 = 0.0;
    double s22 = 0.0;
    double s12 = 0.0;
    double s1y = 0.0;
    double s2y = 0.0;
    double syy = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double a = x1[t] - m1;
        const double b = x2[t] - m2;
        const double c = y[t] - my;
        s11 += a * a;
        s22 += b * b;
        s12 += a * b;
        s1y += a * c;
        s2y += b * c;
        syy += c * c;
    }
    const double den = s11 * s22 - s12 * s12;
    if (!(s11 * s22 > 0.0) || !(den > kSingularTolerance * s11 * s22)) {
        throw DegenerateError("collinear regressors");
    }

    OlsFit fit;
    fit.n = n;
    fit.beta1 = (s1y * s22 - s2y * s12) / den;
    fit.beta2 = (s2y * s11 - s1y * s12) / den;
    fit.beta0 = my - fit.beta1 * m1 - fit.beta2 * m2;

    fit.residuals.resize(n);
    double sse = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double e = (y[t] - my) - fit.beta1 * (x1[t] - m1) - fit.beta2 * (x2[t] - m2);
        fit.residuals[t] = e;
        sse += e * e;
    }
    const double sigma2 = sse / static_cast<double>(n - 3);
    fit.var_beta1 = s22 * sigma2 / den;
    fit.var_beta2 = s11 * sigma2 / den;

    // A constant response has nothing to explain; report a perfect fit.
    fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    if (syy > 0.0) {
        fit.beta_star = {fit.beta1 * std::sqrt(s11 / syy), fit.beta2 * std::sqrt(s22 / syy)};
    } else {
        fit.beta_star = {std::nan(""), std::nan("")};
    }
    fit.elasticity = {elasticity(fit.beta1, m1, my), elasticity(fit.beta2, m2, my)};
    return fit;
}

TimeSeries residual_series(const TimeSeries& y, const TimeSeries& x1, const TimeSeries& x2,
                           double beta1, double beta2) {
    require_same_length(y, x1, x2);
    std::vector<double> e(y.size());
    double total = 0.0;
    for (std::size_t t = 0; t < e.size(); ++t) {
        e[t] = y[t] - beta1 * x1[t] - beta2 * x2[t];
        total += e[t];
    }
    const double m = total / static_cast<double>(e.size());
    for (double& v : e) v -= m;
    return TimeSeries(std::move(e), "residual");
}

DfaRegressionFit dfa_regression(const TimeSeries& y, const TimeSeries& x1, const TimeSeries& x2,
                                const ScaleGrid& grid, int order) {
    require_same_length(y, x1, x2);
    const std::size_t n = y.size();
    if (n < 4) throw InputError("regression needs N >= 4, got " + std::to_string(n));

    const std::vector<TimeSeries> inputs{TimeSeries(y.data(), "y"), TimeSeries(x1.data(), "x1"),
                                         TimeSeries(x2.data(), "x2")};
    const FluctuationSet fluct = fluctuation_set(inputs, grid, order);
    constexpr std::size_t iy = 0;
    constexpr std::size_t i1 = 1;
    constexpr std::size_t i2 = 2;

    DfaRegressionFit fit;
    fit.order = order;
    fit.n = n;
    fit.mean_y = mean(y);
    fit.mean_x1 = mean(x1);
    fit.mean_x2 = mean(x2);

    std::vector<int> kept;
    const double dof = static_cast<double>(n - 3);

    for (std::size_t s = 0; s < grid.size(); ++s) {
        const int scale = grid[s];
        const double fy = fluct.variance(iy, s);
        const double f1 = fluct.variance(i1, s);
        const double f2 = fluct.variance(i2, s);
        const double f12 = fluct.covariance(i1, i2, s);
        const double f1y = fluct.covariance(i1, iy, s);
        const double f2y = fluct.covariance(i2, iy, s);

        const double den = f1 * f2 - f12 * f12;
        if (!(f1 * f2 > 0.0) || !(std::abs(den) > kSingularTolerance * f1 * f2)) {
            fit.warnings.push_back("scale n=" + std::to_string(scale) +
                                   " skipped: near-singular regressor fluctuation matrix");
            continue;
        }

        const double b1 = (f1y * f2 - f2y * f12) / den;
        const double b2 = (f2y * f1 - f1y * f12) / den;

        const Profile resid = build_profile(residual_series(y, x1, x2, b1, b2));
        const double fe = fluctuation_matrix(std::span<const Profile>(&resid, 1), scale, order)[0];

        const double v1 = f2 * fe / den / dof;
        const double v2 = f1 * fe / den / dof;

        kept.push_back(scale);
        fit.beta1.push_back(b1);
        fit.beta2.push_back(b2);
        fit.var_beta1.push_back(v1);
        fit.var_beta2.push_back(v2);
        fit.residual_fluct.push_back(fe);
        fit.r_squared_dfa.push_back(1.0 - fe / fy);
        fit.beta_star_dfa.push_back({b1 * std::sqrt(f1 / fy), b2 * std::sqrt(f2 / fy)});
        fit.elasticity_dfa.push_back({elasticity(b1, fit.mean_x1, fit.mean_y),
                                      elasticity(b2, fit.mean_x2, fit.mean_y)});
        const double se1 = std::sqrt(v1);
        const double se2 = std::sqrt(v2);
        fit.ci95.push_back({Interval{b1 - kZ95 * se1, b1 + kZ95 * se1},
                            Interval{b2 - kZ95 * se2, b2 + kZ95 * se2}});
        fit.implied_intercept.push_back(fit.mean_y - b1 * fit.mean_x1 - b2 * fit.mean_x2);

        fit.f2_y.push_back(fy);
        fit.f2_x1.push_back(f1);
        fit.f2_x2.push_back(f2);
        fit.f2_x1x2.push_back(f12);
        fit.f2_x1y.push_back(f1y);
        fit.f2_x2y.push_back(f2y);
    }

    if (kept.empty()) throw DegenerateError("every scale is degenerate");
    fit.grid = ScaleGrid(std::move(kept));
    return fit;
}

}  // namespace scalereg
