#include "scalereg/synthgen.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "scalereg/errors.hpp"

namespace scalereg {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finaliser over the combined words
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<double> arfima_weights(double d, std::size_t max_lag) {
    if (!(std::abs(d) < 0.5)) {
        throw InputError("fractional parameter d must lie in (-0.5, 0.5), got " + std::to_string(d));
    }
    if (max_lag < 1) throw InputError("ARFIMA truncation must be at least 1");
    std::vector<double> a(max_lag + 1);
    a[0] = 1.0;
    for (std::size_t n = 1; n <= max_lag; ++n) {
        const double k = static_cast<double>(n);
        a[n] = a[n - 1] * (k - 1.0 - d) / k;
    }
    return a;
}

TimeSeries arfima_generate(const ArfimaSpec& spec) {
    if (spec.length == 0) throw InputError("ARFIMA length must be positive");
    // (1-B)^{-d} has the coefficients of (1-B)^{d'} at d' = -d
    const std::vector<double> a = arfima_weights(-spec.d, spec.truncation);
    const std::size_t lag = spec.truncation;

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> xi(spec.length + lag);
    for (double& v : xi) v = gauss(rng);

    std::vector<double> x(spec.length, 0.0);
    for (std::size_t t = 0; t < spec.length; ++t) {
        const double* newest = xi.data() + t + lag;
        double s = 0.0;
        for (std::size_t m = 0; m <= lag; ++m) s += a[m] * *(newest - m);
        x[t] = s;
    }
    return TimeSeries(std::move(x), "arfima");
}

TimeSeries bmfs_generate(const BmfsSpec& spec) {
    if (!(spec.p > 0.0 && spec.p < 0.5)) {
        throw InputError("cascade multiplier p must lie in (0, 0.5)");
    }
    if (spec.depth < 1) throw InputError("cascade depth must be at least 1");
    if (spec.depth > kMaxCascadeDepth) {
        throw InputError("cascade depth " + std::to_string(spec.depth) + " exceeds the cap of " +
                         std::to_string(kMaxCascadeDepth));
    }
    const std::size_t length = std::size_t{1} << spec.depth;
    std::vector<double> x(length);
    for (std::size_t i = 0; i < length; ++i) {
        const int ones = std::popcount(i);
        x[i] = std::pow(spec.p, spec.depth - ones) * std::pow(1.0 - spec.p, ones);
    }
    TimeSeries out(std::move(x), "bmfs");
    if (spec.contamination) {
        const auto& c = *spec.contamination;
        return embed_in_noise(out, c.threshold, c.noise_sd, c.seed).series;
    }
    return out;
}

EmbeddedSeries embed_in_noise(const TimeSeries& series, double threshold, double noise_sd,
                              std::uint64_t seed) {
    if (!(threshold > 0.0)) throw InputError("contamination threshold must be positive");
    if (!(noise_sd > 0.0)) throw InputError("noise standard deviation must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_sd);
    std::vector<double> x = series.data();
    std::size_t replaced = 0;
    for (double& v : x) {
        if (v < threshold) {
            v = gauss(rng);
            ++replaced;
        }
    }
    return {TimeSeries(std::move(x), series.label()), replaced};
}

TimeSeries gaussian_noise(std::size_t length, double sd, std::uint64_t seed, std::string label) {
    if (length == 0) throw InputError("noise length must be positive");
    if (!(sd > 0.0)) throw InputError("noise standard deviation must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sd);
    std::vector<double> x(length);
    for (double& v : x) v = gauss(rng);
    return TimeSeries(std::move(x), std::move(label));
}

TimeSeries make_regression_dataset(const TimeSeries& x1, const TimeSeries& x2, double beta0,
                                   double beta1, double beta2, const TimeSeries& error) {
    if (x1.size() != x2.size() || x1.size() != error.size()) {
        throw InputError("length mismatch: x1=" + std::to_string(x1.size()) +
                         ", x2=" + std::to_string(x2.size()) +
                         ", error=" + std::to_string(error.size()));
    }
    std::vector<double> y(x1.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
        y[t] = beta0 + beta1 * x1[t] + beta2 * x2[t] + error[t];
    }
    return TimeSeries(std::move(y), "y");
}

}  // namespace scalereg
