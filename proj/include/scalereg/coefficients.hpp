#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scalereg/fluctuation.hpp"
#include "scalereg/series.hpp"

namespace scalereg {

/// Matrices whose condition estimate exceeds this are treated as singular.
inline constexpr double kMaxConditionNumber = 1e12;

/// Per-scale symmetric matrix of detrended cross-correlation coefficients.
struct DccaMatrix {
    ScaleGrid scales;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;  // per scale, row-major k x k, unit diagonal

    [[nodiscard]] std::size_t dimension() const noexcept { return labels.size(); }
    [[nodiscard]] std::size_t index_of(const std::string& label) const;
    [[nodiscard]] double at(std::size_t scale_index, std::size_t a, std::size_t b) const {
        return values[scale_index][a * labels.size() + b];
    }
};

/// rho_DCCA(a, b, n) = F2_ab / sqrt(F2_a F2_b).
/// @throws DegenerateError ("degenerate series at scale n") on zero variance.
[[nodiscard]] std::vector<double> rho_dcca(const FluctuationSet& fluct, const std::string& a,
                                           const std::string& b);

/// @throws InputError with fewer than two variables.
[[nodiscard]] DccaMatrix dcca_matrix(const FluctuationSet& fluct);

/// Partial DCCA coefficient from the inverse C of the per-scale rho_DCCA
/// matrix: -C_ab / sqrt(C_aa C_bb).
/// @throws DegenerateError naming the scale when the matrix is singular or its
///         condition number exceeds kMaxConditionNumber.
[[nodiscard]] std::vector<double> rho_pdcca(const DccaMatrix& matrix, const std::string& a,
                                            const std::string& b);

/// Partial coefficient for every unordered pair (i < j) at one scale, from a
/// single inversion; entries ordered (0,1), (0,2), ..., (1,2), ...
[[nodiscard]] std::vector<double> partial_coefficients(std::span<const double> corr,
                                                       std::size_t dimension, int scale);

/// Closed-form first-order partial correlation of 1 and 2 given 3.
[[nodiscard]] double partial_from_pairwise(double r12, double r13, double r23);

/// Pearson correlation, two-pass.
[[nodiscard]] double pearson(std::span<const double> x, std::span<const double> y);

struct PartialCorrelation {
    double r;  // r_{12,3}
    double t;  // r * sqrt((N-3) / (1-r^2))
    std::size_t n;
};

/// t-statistic of a partial correlation with N-3 degrees of freedom.
/// @throws DegenerateError when |r| == 1.
[[nodiscard]] double partial_t_statistic(double r, std::size_t n);

/// Classical partial correlation of x and y controlling for `control`.
/// @throws DegenerateError ("collinear inputs") when any pairwise |r| is 1.
[[nodiscard]] PartialCorrelation partial_corr_classic(const TimeSeries& x, const TimeSeries& y,
                                                      const TimeSeries& control);

}  // namespace scalereg
