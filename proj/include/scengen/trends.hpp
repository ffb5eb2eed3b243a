#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "scengen/panel.hpp"

namespace scengen {

enum class TrendSign { upward, downward };

inline const char* to_string(TrendSign s) {
    return s == TrendSign::upward ? "upward" : "downward";
}

// One market trend over return days [start, end). `total_return` is the
// price move between the bounding extrema: series[end]/series[start] - 1.
// Interior (confirmed) segments run extremum-to-extremum, so
// |total_return| >= theta; the leading and trailing partial segments
// carry confirmed = false and may fall short of theta.
struct TrendSegment {
    Eigen::Index start = 0;
    Eigen::Index end = 0;
    TrendSign sign = TrendSign::upward;
    double theta = 0.0;
    double total_return = 0.0;
    bool confirmed = false;

    Eigen::Index length() const { return end - start; }
};

// Equally-weighted market index of a return panel: cumulative product of
// (1 + cross-asset mean return), so values[0] == 1 and values has one
// more entry than there are return days.
struct IndexSeries {
    std::vector<std::string> days;
    std::vector<double> values;
};

IndexSeries equal_weight_index(const ReturnPanel& r);

// Directional-change segmentation of a positive price series with a
// relative threshold. A trend reverses once price deviates from its
// running extremum by at least theta; the reversal is dated at the
// extremum, so segments are ex-post and partition the N-1 return days of
// an N-day price series. Signs strictly alternate.
std::vector<TrendSegment> detect_trends(std::span<const double> series, double theta);

// |total_return| / theta. Confirmed segments always yield >= 1.
double trend_ratio(const TrendSegment& seg);

// `start,end,sign,theta,total_return` rows.
void save_trend_csv(const std::filesystem::path& path, const std::vector<TrendSegment>& segments);

} // namespace scengen
