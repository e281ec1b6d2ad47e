#include "scalereg/fluctuation.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "scalereg/errors.hpp"

namespace scalereg {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void require_equal_lengths(std::span<const Profile> profiles) {
    for (const auto& p : profiles) {
        if (p.size() != profiles.front().size()) {
            throw InputError("length mismatch: profiles of length " +
                             std::to_string(profiles.front().size()) + " and " +
                             std::to_string(p.size()));
        }
    }
}

}  // namespace

SegmentLayout::SegmentLayout(std::size_t length, int n) : length_(length), n_(n) {
    if (n < 1) throw InputError("scale must be positive, got " + std::to_string(n));
    if (static_cast<std::size_t>(n) > length / 2) {
        throw InputError("scale too large: n=" + std::to_string(n) + " for N=" +
                         std::to_string(length));
    }
    forward_ = length / static_cast<std::size_t>(n);
}

SegmentLayout segment_layout(std::size_t length, int n) { return SegmentLayout(length, n); }

PolynomialDetrender::PolynomialDetrender(int n, int order) : n_(n), order_(order) {
    if (order < 0 || order > kMaxDetrendOrder) {
        throw InputError("detrend order must be in [0, " + std::to_string(kMaxDetrendOrder) +
                         "], got " + std::to_string(order));
    }
    if (n <= order + 1) {
        throw DegenerateError("degenerate fit: window of " + std::to_string(n) +
                              " points for order " + std::to_string(order));
    }
    const auto len = static_cast<std::size_t>(n);
    const auto cols = static_cast<std::size_t>(order + 1);
    basis_.assign(len * cols, 0.0);

    const double half = 0.5 * static_cast<double>(n - 1);
    for (std::size_t p = 0; p < cols; ++p) {
        std::span<double> col(basis_.data() + p * len, len);
        for (std::size_t k = 0; k < len; ++k) {
            const double x = (static_cast<double>(k) - half) / half;
            col[k] = std::pow(x, static_cast<double>(p));
        }
        // Two rounds of modified Gram-Schmidt.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t q = 0; q < p; ++q) {
                std::span<const double> prev(basis_.data() + q * len, len);
                const double c = dot(prev, col);
                for (std::size_t k = 0; k < len; ++k) col[k] -= c * prev[k];
            }
        }
        const double norm = std::sqrt(dot(col, col));
        for (double& v : col) v /= norm;
    }
}

std::span<const double> PolynomialDetrender::basis(int p) const {
    const auto len = static_cast<std::size_t>(n_);
    return {basis_.data() + static_cast<std::size_t>(p) * len, len};
}

void PolynomialDetrender::residuals(std::span<const double> values, std::span<double> out) const {
    const auto len = static_cast<std::size_t>(n_);
    for (std::size_t k = 0; k < len; ++k) out[k] = values[k];
    // Project each column out of the running residual (modified Gram-Schmidt).
    for (int p = 0; p <= order_; ++p) {
        const auto col = basis(p);
        const double c = dot(col, out);
        for (std::size_t k = 0; k < len; ++k) out[k] -= c * col[k];
    }
}

std::vector<double> detrend_segment(std::span<const double> segment_values, int order) {
    const PolynomialDetrender detrender(static_cast<int>(segment_values.size()), order);
    std::vector<double> out(segment_values.size());
    detrender.residuals(segment_values, out);
    return out;
}

std::vector<double> fluctuation_matrix(std::span<const Profile> profiles, int n, int order) {
    if (profiles.empty()) throw InputError("no profiles given");
    require_equal_lengths(profiles);
    if (n < kMinScale) {
        throw InputError("scale " + std::to_string(n) + " is below the minimum of " +
                         std::to_string(kMinScale));
    }

    const SegmentLayout layout(profiles.front().size(), n);
    const PolynomialDetrender detrender(n, order);
    const std::size_t k = profiles.size();
    const auto len = static_cast<std::size_t>(n);

    std::vector<double> resid(k * len);
    std::vector<double> total(k * k, 0.0);

    for (std::size_t j = 0; j < layout.total_segments(); ++j) {
        const std::size_t start = layout.start(j);
        for (std::size_t v = 0; v < k; ++v) {
            detrender.residuals(profiles[v].values().subspan(start, len),
                                std::span<double>(resid.data() + v * len, len));
        }
        for (std::size_t a = 0; a < k; ++a) {
            std::span<const double> ra(resid.data() + a * len, len);
            for (std::size_t b = a; b < k; ++b) {
                std::span<const double> rb(resid.data() + b * len, len);
                total[a * k + b] += dot(ra, rb) / static_cast<double>(n);
            }
        }
    }
    const double segments = static_cast<double>(layout.total_segments());
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            total[a * k + b] /= segments;
            total[b * k + a] = total[a * k + b];
        }
    }
    return total;
}

std::vector<double> dfa_variance(const Profile& profile, const ScaleGrid& grid, int order) {
    grid.validate_for(profile.size());
    std::vector<double> out;
    out.reserve(grid.size());
    for (int n : grid.scales()) {
        out.push_back(fluctuation_matrix(std::span<const Profile>(&profile, 1), n, order)[0]);
    }
    return out;
}

std::vector<double> dcca_covariance(const Profile& profile_a, const Profile& profile_b,
                                    const ScaleGrid& grid, int order) {
    if (profile_a.size() != profile_b.size()) {
        throw InputError("length mismatch: profiles of length " + std::to_string(profile_a.size()) +
                         " and " + std::to_string(profile_b.size()));
    }
    grid.validate_for(profile_a.size());
    const std::vector<Profile> pair{profile_a, profile_b};
    std::vector<double> out;
    out.reserve(grid.size());
    for (int n : grid.scales()) out.push_back(fluctuation_matrix(pair, n, order)[1]);
    return out;
}

FluctuationSet::FluctuationSet(ScaleGrid scales, std::vector<std::string> labels, int order,
                               std::vector<std::vector<double>> matrices)
    : scales_(std::move(scales)),
      labels_(std::move(labels)),
      order_(order),
      matrices_(std::move(matrices)) {
    const std::size_t k = labels_.size();
    if (matrices_.size() != scales_.size()) {
        throw InputError("fluctuation set needs one matrix per scale");
    }
    for (const auto& m : matrices_) {
        if (m.size() != k * k) throw InputError("fluctuation matrix has the wrong shape");
    }
}

std::size_t FluctuationSet::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    throw InputError("unknown variable '" + label + "'");
}

double FluctuationSet::variance(std::size_t var, std::size_t scale_index) const {
    return matrices_[scale_index][var * labels_.size() + var];
}

double FluctuationSet::covariance(std::size_t a, std::size_t b, std::size_t scale_index) const {
    return matrices_[scale_index][a * labels_.size() + b];
}

std::vector<double> FluctuationSet::variance(const std::string& label) const {
    const std::size_t i = index_of(label);
    std::vector<double> out(scales_.size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = variance(i, s);
    return out;
}

std::vector<double> FluctuationSet::covariance(const std::string& a, const std::string& b) const {
    const std::size_t ia = index_of(a);
    const std::size_t ib = index_of(b);
    std::vector<double> out(scales_.size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = covariance(ia, ib, s);
    return out;
}

FluctuationSet fluctuation_set(std::span<const TimeSeries> series_list, const ScaleGrid& grid,
                               int order) {
    if (series_list.empty()) throw InputError("no series given");
    const std::size_t length = series_list.front().size();
    std::vector<Profile> profiles;
    std::vector<std::string> labels;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < series_list.size(); ++i) {
        const auto& s = series_list[i];
        if (s.size() != length) {
            throw InputError("length mismatch: series '" + s.label() + "' has length " +
                             std::to_string(s.size()) + ", expected " + std::to_string(length));
        }
        profiles.push_back(build_profile(s));
        std::string label = s.label();
        if (label.empty() || seen.contains(label)) label = "v" + std::to_string(i);
        seen.insert(label);
        labels.push_back(std::move(label));
    }
    grid.validate_for(length);

    std::vector<std::vector<double>> matrices;
    matrices.reserve(grid.size());
    for (int n : grid.scales()) matrices.push_back(fluctuation_matrix(profiles, n, order));
    return FluctuationSet(grid, std::move(labels), order, std::move(matrices));
}

std::optional<double> fluctuation_slope(const ScaleGrid& grid, std::span<const double> f2) {
    if (f2.size() != grid.size()) throw InputError("fluctuation and grid sizes differ");
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < f2.size(); ++i) {
        if (f2[i] > 0.0 && std::isfinite(f2[i])) {
            xs.push_back(std::log(static_cast<double>(grid[i])));
            ys.push_back(0.5 * std::log(f2[i]));
        }
    }
    if (xs.size() < 2) return std::nullopt;
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace scalereg
