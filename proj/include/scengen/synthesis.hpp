#pragma once

#include <cstdint>
#include <vector>

#include "scengen/analysis.hpp"
#include "scengen/rng.hpp"

namespace scengen {

enum class FirstSign { upward, downward, random };

struct TrendChoice {
    Eigen::Index library_index = 0;
    TrendSign sign = TrendSign::upward;
};

using TrendSequence = std::vector<TrendChoice>;

struct ScenarioSpec {
    Eigen::Index target_days = 0;
    uint64_t seed = 0;
    FirstSign first_sign = FirstSign::random;
    // When non-empty, overrides hypothesizing: library trend indices to
    // replay in order (signs must alternate).
    std::vector<Eigen::Index> forced_sequence;
};

// Draw an alternating sequence of library trends, uniform among trends
// of the required sign, until the cumulative day count reaches
// target_days.
TrendSequence hypothesize_trend_sequence(const TrendLibrary& lib, Eigen::Index target_days,
                                         FirstSign first_sign, RngStream& rng);

// window_len i.i.d. draws from N(mu, factor*factor^T), as columns of an
// S x window_len block.
Eigen::MatrixXd sample_window(const WindowParams& p, RngStream& rng);

// Hypothesize (or replay spec.forced_sequence), sample every trend's
// window chain, concatenate, truncate to exactly target_days. Trend i
// draws from substream(seed, i+1) — substream 0 picks the sequence — so
// output is reproducible and independent of sampling order.
ReturnPanel synthesize_scenario(const TrendLibrary& lib, const ScenarioSpec& spec,
                                TrendSequence* sequence_out = nullptr);

} // namespace scengen
