#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "output.hpp"

namespace scalereg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitInternal = 4;

struct RunConfig {
    std::string command;
    std::string input;
    std::string y_col;
    std::string x1_col;
    std::string x2_col;
    std::vector<std::string> columns;
    std::string timestamp_col;
    char delimiter = ',';
    std::size_t max_gap = 6;
    std::string scales;  // MIN:MAX:COUNT, empty for the default grid
    int order = 2;
    double alpha = 0.01;
    int reps = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string pooling = "pooled";
    std::size_t bins = 0;
    std::string season = "all";
    Format format = Format::csv;
    std::string out_dir = ".";
    bool quiet = false;

    // synth
    std::string kind = "regression";
    std::size_t length = 8192;
    double d = 0.4;
    double d_eps = 0.0;
    std::size_t truncation = 1000;
    double p = 0.3;
    int depth = 15;
    bool contaminate = false;
    double threshold = 1e-5;
    double noise_sd = 1e-4;
    double beta0 = 1.0;
    double beta1 = 1.0;
    double beta2 = 2.0;

    [[nodiscard]] nlohmann::json to_json() const;
};

[[nodiscard]] ResultBundle cmd_dfa(const RunConfig& config, std::ostream& log);
[[nodiscard]] ResultBundle cmd_regress(const RunConfig& config, std::ostream& log);
[[nodiscard]] ResultBundle cmd_significance(const RunConfig& config, std::ostream& log);
[[nodiscard]] ResultBundle cmd_synth(const RunConfig& config, std::ostream& log);
[[nodiscard]] ResultBundle cmd_partial(const RunConfig& config, std::ostream& log);

/// Full command-line entry point: parses, runs, writes the bundle and
/// metadata.json, prints the one-line summary to `out`; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scalereg::cli
