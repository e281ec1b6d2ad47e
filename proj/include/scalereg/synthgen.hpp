#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scalereg/series.hpp"

namespace scalereg {

/// Name of the pseudo-random engine behind every seeded routine.
inline constexpr const char* kGeneratorName = "std::mt19937_64";

inline constexpr std::size_t kDefaultArfimaTruncation = 1000;
inline constexpr int kMaxCascadeDepth = 26;

/// Fractionally integrated Gaussian noise, ARFIMA(0, d, 0).
struct ArfimaSpec {
    double d = 0.0;
    std::size_t length = 0;
    std::size_t truncation = kDefaultArfimaTruncation;  // max MA lag M
    std::uint64_t seed = 0;
};

struct Contamination {
    double threshold = 1e-5;
    double noise_sd = 1e-4;
    std::uint64_t seed = 0;
};

/// Binomial multiplicative cascade of length 2^depth.
struct BmfsSpec {
    double p = 0.3;
    int depth = 0;
    std::optional<Contamination> contamination;
};

struct EmbeddedSeries {
    TimeSeries series;
    std::size_t replacements = 0;
};

/// a_n(d) = Gamma(n-d) / (Gamma(-d) Gamma(n+1)) for n = 0..M, the coefficients
/// of (1-B)^d, via a_n = a_{n-1} (n-1-d) / n.
/// @throws InputError when |d| >= 0.5 or M < 1.
[[nodiscard]] std::vector<double> arfima_weights(double d, std::size_t max_lag);

/// X(t) = sum_{m=0..M} a_m(-d) xi(t-m), xi iid N(0,1): the truncated MA(inf)
/// form of (1-B)^{-d} xi, with Hurst exponent d + 1/2. M warm-up draws are
/// consumed so every output sees the full window.
[[nodiscard]] TimeSeries arfima_generate(const ArfimaSpec& spec);

/// Value at 1-based index k is p^(depth - b) (1-p)^b with b = popcount(k-1).
/// Applies `spec.contamination` when present.
[[nodiscard]] TimeSeries bmfs_generate(const BmfsSpec& spec);

/// Replaces every value below `threshold` by a fresh N(0, noise_sd^2) draw.
[[nodiscard]] EmbeddedSeries embed_in_noise(const TimeSeries& series, double threshold,
                                             double noise_sd, std::uint64_t seed);

/// iid N(0, sd^2) series.
[[nodiscard]] TimeSeries gaussian_noise(std::size_t length, double sd, std::uint64_t seed,
                                        std::string label = {});

/// y = b0 + b1 x1 + b2 x2 + error, elementwise.
[[nodiscard]] TimeSeries make_regression_dataset(const TimeSeries& x1, const TimeSeries& x2,
                                                 double beta0, double beta1, double beta2,
                                                 const TimeSeries& error);

/// Deterministic 64-bit seed for stream `stream` derived from a base seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace scalereg
