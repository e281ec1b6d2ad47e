#include "scalereg/coefficients.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "scalereg/errors.hpp"

namespace scalereg {

namespace {

constexpr double kCollinearTolerance = 1e-12;

std::string scale_text(int n) { return "scale n=" + std::to_string(n); }

}  // namespace

std::size_t DccaMatrix::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return i;
    }
    throw InputError("unknown variable '" + label + "'");
}

std::vector<double> rho_dcca(const FluctuationSet& fluct, const std::string& a,
                             const std::string& b) {
    const std::size_t ia = fluct.index_of(a);
    const std::size_t ib = fluct.index_of(b);
    std::vector<double> out(fluct.scales().size());
    for (std::size_t s = 0; s < out.size(); ++s) {
        const double va = fluct.variance(ia, s);
        const double vb = fluct.variance(ib, s);
        if (!(va > 0.0) || !(vb > 0.0)) {
            throw DegenerateError("degenerate series at " + scale_text(fluct.scales()[s]));
        }
        // Exact +-1 for identical or negated inputs; clamp guards rounding.
        out[s] = std::clamp(fluct.covariance(ia, ib, s) / std::sqrt(va * vb), -1.0, 1.0);
    }
    return out;
}

DccaMatrix dcca_matrix(const FluctuationSet& fluct) {
    const std::size_t k = fluct.variable_count();
    if (k < 2) throw InputError("DCCA matrix needs at least two variables");
    DccaMatrix out{fluct.scales(), fluct.labels(), {}};
    out.values.reserve(fluct.scales().size());
    for (std::size_t s = 0; s < fluct.scales().size(); ++s) {
        std::vector<double> m(k * k, 0.0);
        for (std::size_t a = 0; a < k; ++a) {
            if (!(fluct.variance(a, s) > 0.0)) {
                throw DegenerateError("degenerate series at " + scale_text(fluct.scales()[s]));
            }
        }
        for (std::size_t a = 0; a < k; ++a) {
            m[a * k + a] = 1.0;
            for (std::size_t b = a + 1; b < k; ++b) {
                const double r = std::clamp(
                    fluct.covariance(a, b, s) /
                        std::sqrt(fluct.variance(a, s) * fluct.variance(b, s)),
                    -1.0, 1.0);
                m[a * k + b] = r;
                m[b * k + a] = r;
            }
        }
        out.values.push_back(std::move(m));
    }
    return out;
}

std::vector<double> partial_coefficients(std::span<const double> corr, std::size_t dimension,
                                         int scale) {
    const auto k = static_cast<Eigen::Index>(dimension);
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        m(corr.data(), k, k);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    const auto abs_ev = eig.eigenvalues().cwiseAbs();
    const double smallest = abs_ev.minCoeff();
    if (!(smallest > 0.0) || abs_ev.maxCoeff() / smallest > kMaxConditionNumber) {
        throw DegenerateError("singular or ill-conditioned DCCA matrix at " + scale_text(scale));
    }
    const Eigen::MatrixXd c = Eigen::MatrixXd(m).inverse();

    std::vector<double> out;
    out.reserve(dimension * (dimension - 1) / 2);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = a + 1; b < k; ++b) {
            const double denom = c(a, a) * c(b, b);
            if (!(denom > 0.0)) {
                throw DegenerateError("DCCA matrix is not positive definite at " +
                                      scale_text(scale));
            }
            out.push_back(-c(a, b) / std::sqrt(denom));
        }
    }
    return out;
}

std::vector<double> rho_pdcca(const DccaMatrix& matrix, const std::string& a,
                              const std::string& b) {
    std::size_t ia = matrix.index_of(a);
    std::size_t ib = matrix.index_of(b);
    if (ia == ib) throw InputError("partial coefficient needs two distinct variables");
    if (ia > ib) std::swap(ia, ib);
    const std::size_t k = matrix.dimension();
    // Position of (ia, ib) in the upper-triangular pair ordering.
    const std::size_t pair = ia * k - ia * (ia + 1) / 2 + (ib - ia - 1);

    std::vector<double> out(matrix.scales.size());
    for (std::size_t s = 0; s < out.size(); ++s) {
        out[s] = partial_coefficients(matrix.values[s], k, matrix.scales[s])[pair];
    }
    return out;
}

double partial_from_pairwise(double r12, double r13, double r23) {
    return (r12 - r13 * r23) / std::sqrt((1.0 - r13 * r13) * (1.0 - r23 * r23));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("length mismatch in correlation");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw DegenerateError("zero-variance input in correlation");
    return sxy / std::sqrt(sxx * syy);
}

double partial_t_statistic(double r, std::size_t n) {
    if (n < 4) throw InputError("partial correlation t-statistic needs N >= 4");
    if (std::abs(r) >= 1.0 - kCollinearTolerance) throw DegenerateError("collinear inputs");
    return r * std::sqrt(static_cast<double>(n - 3) / (1.0 - r * r));
}

PartialCorrelation partial_corr_classic(const TimeSeries& x, const TimeSeries& y,
                                        const TimeSeries& control) {
    if (x.size() != y.size() || x.size() != control.size()) {
        throw InputError("length mismatch in partial correlation");
    }
    if (x.size() < 4) throw InputError("partial correlation needs N >= 4");
    const double r12 = pearson(x.values(), y.values());
    const double r13 = pearson(x.values(), control.values());
    const double r23 = pearson(y.values(), control.values());
    for (double r : {r12, r13, r23}) {
        if (std::abs(r) >= 1.0 - kCollinearTolerance) throw DegenerateError("collinear inputs");
    }
    const double r = partial_from_pairwise(r12, r13, r23);
    return {r, partial_t_statistic(r, x.size()), x.size()};
}

}  // namespace scalereg
