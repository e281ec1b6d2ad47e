#include "scalereg/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scalereg/errors.hpp"

namespace scalereg {

TimeSeries::TimeSeries(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) throw InputError("empty input");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InputError("non-finite value at index " + std::to_string(i) +
                             (label_.empty() ? std::string{} : " of '" + label_ + "'"));
        }
    }
}

ScaleGrid::ScaleGrid(std::vector<int> scales) : scales_(std::move(scales)) {
    if (scales_.empty()) throw InputError("scale grid is empty");
    for (std::size_t i = 0; i < scales_.size(); ++i) {
        if (scales_[i] < kMinScale) {
            throw InputError("scale " + std::to_string(scales_[i]) + " is below the minimum of " +
                             std::to_string(kMinScale));
        }
        if (i > 0 && scales_[i] <= scales_[i - 1]) {
            throw InputError("scale grid must be strictly increasing");
        }
    }
}

void ScaleGrid::validate_for(std::size_t length) const {
    for (int n : scales_) {
        if (static_cast<std::size_t>(n) > length / 2) {
            throw InputError("scale too large: n=" + std::to_string(n) + " exceeds N/2 for N=" +
                             std::to_string(length));
        }
    }
}

Profile build_profile(std::span<const double> values) {
    if (values.empty()) throw InputError("empty input");
    const double m = mean(values);
    std::vector<double> z(values.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < values.size(); ++t) {
        acc += values[t] - m;
        z[t] = acc;
    }
    return Profile(std::move(z));
}

Profile build_profile(const TimeSeries& series) { return build_profile(series.values()); }

ScaleGrid log_scale_grid(int n_min, int n_max, int count) {
    if (n_min < kMinScale) {
        throw InputError("n_min must be at least " + std::to_string(kMinScale));
    }
    if (n_max <= n_min) throw InputError("n_max must exceed n_min");
    if (count < 2) throw InputError("scale count must be at least 2");

    const double lo = std::log(static_cast<double>(n_min));
    const double hi = std::log(static_cast<double>(n_max));
    std::vector<int> scales;
    scales.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        int n;
        if (i == 0) {
            n = n_min;
        } else if (i == count - 1) {
            n = n_max;
        } else {
            const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
            n = static_cast<int>(std::lround(std::exp(lo + frac * (hi - lo))));
        }
        if (scales.empty() || n > scales.back()) scales.push_back(n);
    }
    return ScaleGrid(std::move(scales));
}

ScaleGrid default_scale_grid(std::size_t length) {
    const int upper = static_cast<int>(std::min<std::size_t>(1000, length / 4));
    if (upper <= 10) {
        throw InputError("series of length " + std::to_string(length) +
                         " is too short for the default scale grid");
    }
    return log_scale_grid(10, upper, 30);
}

double mean(std::span<const double> values) {
    if (values.empty()) throw InputError("empty input");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double mean(const TimeSeries& series) { return mean(series.values()); }

TimeSeries centered(const TimeSeries& series) {
    const double m = mean(series);
    std::vector<double> out(series.size());
    std::transform(series.values().begin(), series.values().end(), out.begin(),
                   [m](double v) { return v - m; });
    return TimeSeries(std::move(out), series.label());
}

}  // namespace scalereg
