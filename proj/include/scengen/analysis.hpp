#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scengen/panel.hpp"
#include "scengen/trends.hpp"

namespace scengen {

// Mean and covariance factor of one analysis window. The covariance is
// kept in factor form: sigma = factor * factor^T, with factor S×k for a
// k-day window, so rank deficiency (k - 1 < S) needs no regularization
// and sampling is mu + factor * z.
struct WindowParams {
    Eigen::VectorXd mu;
    Eigen::MatrixXd factor;
    Eigen::Index window_len = 0;

    Eigen::Index asset_count() const { return mu.size(); }
};

struct AnalyzedTrend {
    TrendSign sign = TrendSign::upward;
    std::vector<WindowParams> windows;
    TrendSegment source;

    Eigen::Index day_count() const {
        Eigen::Index n = 0;
        for (const auto& w : windows) n += w.window_len;
        return n;
    }
};

struct TrendLibrary {
    std::vector<std::string> assets;
    double theta = 0.0;
    Eigen::Index window_len_L = 0;
    std::vector<AnalyzedTrend> trends;

    Eigen::Index asset_count() const { return static_cast<Eigen::Index>(assets.size()); }
};

// Split a segment into consecutive length-L blocks; a remainder shorter
// than L/2 is merged into the last block, otherwise kept as its own
// (shorter) window. Lengths always sum to segment_len.
std::vector<Eigen::Index> segment_windows(Eigen::Index segment_len, Eigen::Index L);

// Unbiased mean/covariance of a k-day slice, k >= 2:
// factor = (X - mu*1^T)/sqrt(k-1).
WindowParams estimate_window_params(const Eigen::Ref<const Eigen::MatrixXd>& slice);

// Full analysis pass: equal-weight index, trend detection at theta, and
// per-window parameter estimation inside every trend.
TrendLibrary build_trend_library(const ReturnPanel& r, double theta, Eigen::Index L);

void save_trend_library(const std::filesystem::path& path, const TrendLibrary& lib);
TrendLibrary load_trend_library(const std::filesystem::path& path);

} // namespace scengen
