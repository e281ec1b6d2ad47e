#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalereg/regression.hpp"
#include "scalereg/series.hpp"

namespace scalereg {

/// Per-scale t-statistics of the two detrended regression coefficients.
struct ScaleTStat {
    ScaleGrid grid;
    std::vector<double> t1;
    std::vector<double> t2;
    std::vector<std::string> warnings;
};

/// (beta_j(n) - beta_null_j) / sqrt(var beta_j(n)); scales with zero variance
/// are skipped with a warning.
[[nodiscard]] ScaleTStat t_statistics(const DfaRegressionFit& fit,
                                      std::array<double, 2> beta_null = {0.0, 0.0});

/// Uniform random permutation (Fisher-Yates) of the values.
[[nodiscard]] TimeSeries shuffle_series(const TimeSeries& series, std::mt19937_64& rng);
[[nodiscard]] TimeSeries shuffle_series(const TimeSeries& series, std::uint64_t seed);

enum class StatisticKind { t, pdcca };

/// Which t-statistics feed the null distribution.
enum class Pooling { pooled, beta1, beta2 };

/// Moments and optional histogram of the signed statistic under the null.
struct DistributionSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    std::vector<double> bin_edges;  // size bins + 1, empty when no histogram requested
    std::vector<std::size_t> bin_counts;
};

struct McOptions {
    double alpha = 0.01;
    int reps = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency
    Pooling pooling = Pooling::pooled;
    std::size_t histogram_bins = 0;
};

/// Shuffle-based per-scale critical values for |statistic| at level alpha.
struct McCriticalCurve {
    ScaleGrid grid;
    std::vector<double> critical;
    double alpha = 0.01;
    int reps = 0;
    std::uint64_t seed = 0;
    StatisticKind kind = StatisticKind::t;
    std::size_t failed_reps = 0;
    std::vector<DistributionSummary> distribution;
    std::vector<std::string> warnings;

    [[nodiscard]] std::optional<double> critical_at(int scale) const;
};

/// Largest fraction of replications allowed to fail before a run aborts.
inline constexpr double kMaxFailedRepFraction = 0.01;

/// Every replication shuffles y, x1 and x2 independently, refits and records
/// |t_j(n)|; the critical value is the empirical (1 - alpha) quantile per scale.
/// Replication r draws from its own stream derived from (seed, r).
/// @throws InputError for alpha outside (0, 0.5] or reps < 100.
/// @throws DegenerateError when more than 1% of replications fail.
[[nodiscard]] McCriticalCurve mc_critical_t(const TimeSeries& y, const TimeSeries& x1,
                                            const TimeSeries& x2, const ScaleGrid& grid,
                                            int order, const McOptions& options);

/// Same construction for |rho_PDCCA(n)| over the given index pairs (all pairs
/// when empty), pooled. Needs at least three series.
[[nodiscard]] McCriticalCurve mc_critical_pdcca(
    std::span<const TimeSeries> series_list, const ScaleGrid& grid, int order,
    const McOptions& options, std::vector<std::pair<std::size_t, std::size_t>> pairs = {});

/// flag(n) = |observed(n)| > critical(n).
/// @throws InputError when `grid` differs from the curve's grid.
[[nodiscard]] std::vector<bool> decide(const McCriticalCurve& curve, const ScaleGrid& grid,
                                       std::span<const double> observed);

/// Type-7 (linear interpolation) empirical quantile of already sorted data.
[[nodiscard]] double sorted_quantile(std::span<const double> sorted, double prob);

}  // namespace scalereg
