#include "scalereg/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scalereg/coefficients.hpp"
#include "scalereg/errors.hpp"
#include "scalereg/fluctuation.hpp"
#include "scalereg/parallel.hpp"
#include "scalereg/synthgen.hpp"

namespace scalereg {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

void validate_options(const McOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha <= 0.5)) {
        throw InputError("alpha must lie in (0, 0.5], got " + std::to_string(options.alpha));
    }
    if (options.reps < 100) {
        throw InputError("at least 100 replications are required, got " +
                         std::to_string(options.reps));
    }
}

DistributionSummary summarise(const std::vector<double>& signed_values, std::size_t bins) {
    DistributionSummary out;
    out.count = signed_values.size();
    if (signed_values.empty()) return out;
    const double m = mean(signed_values);
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    double max_abs = 0.0;
    for (double v : signed_values) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
        max_abs = std::max(max_abs, std::abs(v));
    }
    const double cnt = static_cast<double>(signed_values.size());
    m2 /= cnt;
    m3 /= cnt;
    m4 /= cnt;
    out.mean = m;
    out.sd = std::sqrt(m2);
    if (m2 > 0.0) {
        out.skewness = m3 / std::pow(m2, 1.5);
        out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    if (bins > 0 && max_abs > 0.0) {
        out.bin_edges.resize(bins + 1);
        out.bin_counts.assign(bins, 0);
        const double width = 2.0 * max_abs / static_cast<double>(bins);
        for (std::size_t b = 0; b <= bins; ++b) {
            out.bin_edges[b] = -max_abs + width * static_cast<double>(b);
        }
        for (double v : signed_values) {
            auto b = static_cast<std::size_t>((v + max_abs) / width);
            out.bin_counts[std::min(b, bins - 1)] += 1;
        }
    }
    return out;
}

/// Builds a curve from per-rep samples laid out as samples[rep][scale * width + slot],
/// NaN marking a missing value.
McCriticalCurve assemble_curve(const ScaleGrid& grid, const std::vector<std::vector<double>>& samples,
                               const std::vector<char>& failed, std::size_t width,
                               const McOptions& options, StatisticKind kind) {
    McCriticalCurve curve;
    curve.alpha = options.alpha;
    curve.reps = options.reps;
    curve.seed = options.seed;
    curve.kind = kind;
    curve.failed_reps = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));

    if (static_cast<double>(curve.failed_reps) >
        kMaxFailedRepFraction * static_cast<double>(options.reps)) {
        throw DegenerateError(std::to_string(curve.failed_reps) + " of " +
                              std::to_string(options.reps) +
                              " shuffled replications failed (budget is 1%)");
    }
    if (curve.failed_reps > 0) {
        curve.warnings.push_back(std::to_string(curve.failed_reps) +
                                 " degenerate replications discarded");
    }

    std::vector<int> kept;
    for (std::size_t s = 0; s < grid.size(); ++s) {
        std::vector<double> signed_values;
        signed_values.reserve(samples.size() * width);
        for (std::size_t r = 0; r < samples.size(); ++r) {
            if (failed[r]) continue;
            for (std::size_t w = 0; w < width; ++w) {
                const double v = samples[r][s * width + w];
                if (!std::isnan(v)) signed_values.push_back(v);
            }
        }
        if (signed_values.empty()) {
            curve.warnings.push_back("scale n=" + std::to_string(grid[s]) +
                                     " dropped: no valid replications");
            continue;
        }
        std::vector<double> magnitudes(signed_values.size());
        std::transform(signed_values.begin(), signed_values.end(), magnitudes.begin(),
                       [](double v) { return std::abs(v); });
        std::sort(magnitudes.begin(), magnitudes.end());
        const double crit = sorted_quantile(magnitudes, 1.0 - options.alpha);
        if (!(crit > 0.0)) {
            curve.warnings.push_back("scale n=" + std::to_string(grid[s]) +
                                     " has a non-positive critical value");
        }
        kept.push_back(grid[s]);
        curve.critical.push_back(crit);
        curve.distribution.push_back(summarise(signed_values, options.histogram_bins));
    }
    if (kept.empty()) throw DegenerateError("no scale produced a critical value");
    curve.grid = ScaleGrid(std::move(kept));
    return curve;
}

}  // namespace

ScaleTStat t_statistics(const DfaRegressionFit& fit, std::array<double, 2> beta_null) {
    ScaleTStat out;
    std::vector<int> kept;
    for (std::size_t s = 0; s < fit.grid.size(); ++s) {
        const double v1 = fit.var_beta1[s];
        const double v2 = fit.var_beta2[s];
        if (!(v1 > 0.0) || !(v2 > 0.0)) {
            out.warnings.push_back("scale n=" + std::to_string(fit.grid[s]) +
                                   " skipped: zero coefficient variance");
            continue;
        }
        kept.push_back(fit.grid[s]);
        out.t1.push_back((fit.beta1[s] - beta_null[0]) / std::sqrt(v1));
        out.t2.push_back((fit.beta2[s] - beta_null[1]) / std::sqrt(v2));
    }
    if (!kept.empty()) out.grid = ScaleGrid(std::move(kept));
    return out;
}

TimeSeries shuffle_series(const TimeSeries& series, std::mt19937_64& rng) {
    std::vector<double> v = series.data();
    for (std::size_t i = v.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(v[i - 1], v[pick(rng)]);
    }
    return TimeSeries(std::move(v), series.label());
}

TimeSeries shuffle_series(const TimeSeries& series, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return shuffle_series(series, rng);
}

std::optional<double> McCriticalCurve::critical_at(int scale) const {
    for (std::size_t s = 0; s < grid.size(); ++s) {
        if (grid[s] == scale) return critical[s];
    }
    return std::nullopt;
}

double sorted_quantile(std::span<const double> sorted, double prob) {
    if (sorted.empty()) throw InputError("quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

McCriticalCurve mc_critical_t(const TimeSeries& y, const TimeSeries& x1, const TimeSeries& x2,
                              const ScaleGrid& grid, int order, const McOptions& options) {
    validate_options(options);
    grid.validate_for(y.size());

    const std::size_t width = options.pooling == Pooling::pooled ? 2 : 1;
    const auto reps = static_cast<std::size_t>(options.reps);
    std::vector<std::vector<double>> samples(reps);
    std::vector<char> failed(reps, 0);

    parallel_for(reps, options.threads, [&](std::size_t r) {
        std::mt19937_64 rng(derive_seed(options.seed, r));
        const TimeSeries ys = shuffle_series(y, rng);
        const TimeSeries x1s = shuffle_series(x1, rng);
        const TimeSeries x2s = shuffle_series(x2, rng);
        std::vector<double> row(grid.size() * width, kMissing);
        try {
            const DfaRegressionFit fit = dfa_regression(ys, x1s, x2s, grid, order);
            const ScaleTStat t = t_statistics(fit);
            std::size_t s = 0;
            for (std::size_t i = 0; i < t.grid.size(); ++i) {
                while (grid[s] != t.grid[i]) ++s;
                switch (options.pooling) {
                    case Pooling::pooled:
                        row[s * 2] = t.t1[i];
                        row[s * 2 + 1] = t.t2[i];
                        break;
                    case Pooling::beta1:
                        row[s] = t.t1[i];
                        break;
                    case Pooling::beta2:
                        row[s] = t.t2[i];
                        break;
                }
            }
        } catch (const DegenerateError&) {
            failed[r] = 1;
        }
        samples[r] = std::move(row);
    });

    return assemble_curve(grid, samples, failed, width, options, StatisticKind::t);
}

McCriticalCurve mc_critical_pdcca(std::span<const TimeSeries> series_list, const ScaleGrid& grid,
                                  int order, const McOptions& options,
                                  std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    validate_options(options);
    const std::size_t k = series_list.size();
    if (k < 3) throw InputError("partial DCCA critical values need at least three series");
    grid.validate_for(series_list.front().size());

    if (pairs.empty()) {
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
        }
    }
    std::vector<std::size_t> pair_slots;
    for (auto [a, b] : pairs) {
        if (a > b) std::swap(a, b);
        if (a == b || b >= k) throw InputError("invalid variable pair for partial DCCA");
        pair_slots.push_back(a * k - a * (a + 1) / 2 + (b - a - 1));
    }

    const std::size_t width = pair_slots.size();
    const auto reps = static_cast<std::size_t>(options.reps);
    std::vector<std::vector<double>> samples(reps);
    std::vector<char> failed(reps, 0);

    parallel_for(reps, options.threads, [&](std::size_t r) {
        std::mt19937_64 rng(derive_seed(options.seed, r));
        std::vector<TimeSeries> shuffled;
        shuffled.reserve(k);
        for (const auto& s : series_list) shuffled.push_back(shuffle_series(s, rng));
        std::vector<double> row(grid.size() * width, kMissing);
        try {
            const DccaMatrix m = dcca_matrix(fluctuation_set(shuffled, grid, order));
            for (std::size_t s = 0; s < grid.size(); ++s) {
                try {
                    const auto partial = partial_coefficients(m.values[s], k, grid[s]);
                    for (std::size_t w = 0; w < width; ++w) row[s * width + w] = partial[pair_slots[w]];
                } catch (const DegenerateError&) {
                    // this scale contributes nothing for this replication
                }
            }
        } catch (const DegenerateError&) {
            failed[r] = 1;
        }
        samples[r] = std::move(row);
    });

    return assemble_curve(grid, samples, failed, width, options, StatisticKind::pdcca);
}

std::vector<bool> decide(const McCriticalCurve& curve, const ScaleGrid& grid,
                         std::span<const double> observed) {
    if (!(grid == curve.grid)) throw InputError("grid mismatch between statistic and critical curve");
    if (observed.size() != grid.size()) throw InputError("observed statistic does not match grid");
    std::vector<bool> flags(grid.size());
    for (std::size_t s = 0; s < grid.size(); ++s) {
        flags[s] = std::abs(observed[s]) > curve.critical[s];
    }
    return flags;
}

}  // namespace scalereg
