#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace scalereg {

/// Uniformly sampled, finite, non-empty scalar sequence.
class TimeSeries {
public:
    TimeSeries() = default;

    /// @throws InputError if `values` is empty or contains NaN/inf.
    explicit TimeSeries(std::vector<double> values, std::string label = {});

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return values_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
    std::string label_;
};

/// Cumulative sum of a mean-centered series: Z_t = sum_{i<=t} (z_i - <z>).
class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<double> values) : values_(std::move(values)) {}

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::size_t source_length() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// Smallest window that still leaves a residual degree of freedom after a
/// quadratic fit.
inline constexpr int kMinScale = 4;

/// Strictly increasing set of window sizes (in samples), each >= kMinScale.
class ScaleGrid {
public:
    ScaleGrid() = default;

    /// @throws InputError if scales are empty, not strictly increasing or < kMinScale.
    explicit ScaleGrid(std::vector<int> scales);

    [[nodiscard]] std::span<const int> scales() const noexcept { return scales_; }
    [[nodiscard]] std::size_t size() const noexcept { return scales_.size(); }
    [[nodiscard]] bool empty() const noexcept { return scales_.empty(); }
    [[nodiscard]] int operator[](std::size_t i) const { return scales_[i]; }
    [[nodiscard]] int front() const { return scales_.front(); }
    [[nodiscard]] int back() const { return scales_.back(); }

    /// Throws InputError naming the first scale that exceeds floor(length/2).
    void validate_for(std::size_t length) const;

    friend bool operator==(const ScaleGrid&, const ScaleGrid&) = default;

private:
    std::vector<int> scales_;
};

[[nodiscard]] Profile build_profile(const TimeSeries& series);
[[nodiscard]] Profile build_profile(std::span<const double> values);

/// `count` log-equidistant targets between n_min and n_max, rounded to the
/// nearest integer with duplicates removed.
[[nodiscard]] ScaleGrid log_scale_grid(int n_min, int n_max, int count);

/// Grid used when the caller does not supply one: 10 .. min(1000, N/4), 30 points.
[[nodiscard]] ScaleGrid default_scale_grid(std::size_t length);

[[nodiscard]] double mean(std::span<const double> values);
[[nodiscard]] double mean(const TimeSeries& series);
[[nodiscard]] TimeSeries centered(const TimeSeries& series);

}  // namespace scalereg
