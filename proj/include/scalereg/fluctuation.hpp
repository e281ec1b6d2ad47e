#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scalereg/series.hpp"

namespace scalereg {

inline constexpr int kDefaultDetrendOrder = 2;
inline constexpr int kMaxDetrendOrder = 4;

/// Non-overlapping windows of length n laid from the start of the profile and
/// again from its end, giving 2 * floor(N/n) segments in total. Pure index
/// geometry: the kMinScale floor is enforced by the fluctuation routines.
class SegmentLayout {
public:
    /// @throws InputError when n < 1 or n > N/2.
    SegmentLayout(std::size_t length, int n);

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] int scale() const noexcept { return n_; }
    [[nodiscard]] std::size_t forward_count() const noexcept { return forward_; }
    [[nodiscard]] std::size_t total_segments() const noexcept { return 2 * forward_; }

    /// 0-based start of segment `j` (0-based, j < total_segments()).
    [[nodiscard]] std::size_t start(std::size_t j) const noexcept {
        return j < forward_ ? j * static_cast<std::size_t>(n_)
                            : length_ - (j + 1 - forward_) * static_cast<std::size_t>(n_);
    }

    /// 1-based global index of offset k (1..n) in segment j (1..2N_n).
    [[nodiscard]] std::size_t index(std::size_t j, std::size_t k) const noexcept {
        return start(j - 1) + k;
    }

private:
    std::size_t length_;
    int n_;
    std::size_t forward_;
};

/// Least-squares polynomial detrending on a fixed window length. The design
/// is orthonormalised once (Gram-Schmidt on centred, scaled offsets) and then
/// reused for every segment.
class PolynomialDetrender {
public:
    /// @throws InputError for order outside [0, kMaxDetrendOrder];
    ///         DegenerateError("degenerate fit") when n <= order + 1.
    PolynomialDetrender(int n, int order);

    [[nodiscard]] int length() const noexcept { return n_; }
    [[nodiscard]] int order() const noexcept { return order_; }

    /// Writes values minus their best-fit polynomial into `out`.
    void residuals(std::span<const double> values, std::span<double> out) const;

    /// Orthonormal basis column p (size n).
    [[nodiscard]] std::span<const double> basis(int p) const;

private:
    int n_;
    int order_;
    std::vector<double> basis_;  // (order+1) columns of length n, column-major
};

[[nodiscard]] SegmentLayout segment_layout(std::size_t length, int n);

[[nodiscard]] std::vector<double> detrend_segment(std::span<const double> segment_values,
                                                  int order = kDefaultDetrendOrder);

/// Per-scale detrended variance F^2_Z(n).
[[nodiscard]] std::vector<double> dfa_variance(const Profile& profile, const ScaleGrid& grid,
                                               int order = kDefaultDetrendOrder);

/// Per-scale detrended covariance F^2_{ab}(n); carries sign.
[[nodiscard]] std::vector<double> dcca_covariance(const Profile& profile_a,
                                                  const Profile& profile_b,
                                                  const ScaleGrid& grid,
                                                  int order = kDefaultDetrendOrder);

/// All detrended (co)variances of k profiles at one scale, returned as a full
/// row-major k x k symmetric matrix. Segment contributions are summed in
/// segment order.
[[nodiscard]] std::vector<double> fluctuation_matrix(std::span<const Profile> profiles, int n,
                                                     int order = kDefaultDetrendOrder);

/// Detrended variances and pairwise covariances for a set of equal-length series.
class FluctuationSet {
public:
    FluctuationSet(ScaleGrid scales, std::vector<std::string> labels, int order,
                   std::vector<std::vector<double>> matrices);

    [[nodiscard]] const ScaleGrid& scales() const noexcept { return scales_; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] int detrend_order() const noexcept { return order_; }
    [[nodiscard]] std::size_t variable_count() const noexcept { return labels_.size(); }
    [[nodiscard]] std::size_t pair_count() const noexcept {
        return labels_.size() * (labels_.size() - 1) / 2;
    }

    /// @throws InputError for unknown labels.
    [[nodiscard]] std::size_t index_of(const std::string& label) const;

    [[nodiscard]] double variance(std::size_t var, std::size_t scale_index) const;
    [[nodiscard]] double covariance(std::size_t a, std::size_t b, std::size_t scale_index) const;

    [[nodiscard]] std::vector<double> variance(const std::string& label) const;
    [[nodiscard]] std::vector<double> covariance(const std::string& a, const std::string& b) const;

    /// Row-major k x k (co)variance matrix at one scale.
    [[nodiscard]] std::span<const double> matrix(std::size_t scale_index) const {
        return matrices_[scale_index];
    }

private:
    ScaleGrid scales_;
    std::vector<std::string> labels_;
    int order_;
    std::vector<std::vector<double>> matrices_;
};

/// One pass over the segments of each scale; every segment's residuals are
/// computed once and shared by all pairs. Labels default to the series labels,
/// falling back to "v<i>" when absent or duplicated.
[[nodiscard]] FluctuationSet fluctuation_set(std::span<const TimeSeries> series_list,
                                             const ScaleGrid& grid,
                                             int order = kDefaultDetrendOrder);

/// Least-squares slope of log sqrt(F^2) against log n over the positive entries.
/// Empty when fewer than two scales carry a positive fluctuation.
[[nodiscard]] std::optional<double> fluctuation_slope(const ScaleGrid& grid, std::span<const double> f2);

}  // namespace scalereg
