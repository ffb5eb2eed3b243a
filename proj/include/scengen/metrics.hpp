#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "scengen/panel.hpp"

namespace scengen {

struct MetricsOptions {
    double theta = 0.05;
    Eigen::Index rolling_window = 180;
    Eigen::Index rolling_step = 5;
    Eigen::Index acf_lags_returns = 20;
    Eigen::Index acf_lags_abs = 100;
    Eigen::Index similarity_window = 50;
    Eigen::Index similarity_step = 1;
    // Worker threads for the per-asset battery. Assets are computed into
    // disjoint slots, so the report does not depend on this value.
    int threads = 1;
};

// Population (biased) moment estimators; Gaussian kurtosis reference is 3
// (not excess).
double kurtosis(std::span<const double> series);
double skewness(std::span<const double> series);

struct RollingPoint {
    Eigen::Index t = 0; // window start
    double kurtosis = 0.0;
    double skewness = 0.0; // NaN marks a degenerate window
};

std::vector<RollingPoint> rolling_moments(std::span<const double> series,
                                          Eigen::Index window = 180, Eigen::Index step = 5);

// Sample autocorrelation at lags 1..max_lag, computed against the global
// mean with lag-adjusted numerator over biased-variance denominator:
// acf(k) = [sum (x_t-m)(x_{t+k}-m) / (n-k)] / [sum (x_t-m)^2 / n].
std::vector<double> acf(std::span<const double> series, Eigen::Index max_lag);
double avg_abs_acf(std::span<const double> series, Eigen::Index max_lag);
double acf_bound(Eigen::Index t); // 2/sqrt(T)

// Pearson correlations over day columns [start, start+len); len < 0
// means "through the end". Degenerate assets get NaN rows/columns (the
// diagonal stays 1).
Eigen::MatrixXd correlation_map(const ReturnPanel& r, Eigen::Index start = 0,
                                Eigen::Index len = -1);

// Fraction of assets whose raw price move over each window matches the
// direction of the 50-day-smoothed equal-weight index. Zero moves never
// match.
std::vector<double> directional_similarity(const ReturnPanel& r, Eigen::Index window = 50,
                                           Eigen::Index step = 1);

// Five-number summary with Tukey whiskers (1.5 IQR, type-7 quartiles).
struct BoxSummary {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    double lo_whisker = 0, hi_whisker = 0;
    Eigen::Index n = 0, n_outliers = 0;
};

BoxSummary summarize_box(std::vector<double> values); // NaNs are dropped

struct AssetMetrics {
    std::string asset;
    double kurtosis = 0.0, skewness = 0.0;
    double avg_abs_acf_returns = 0.0;
    double avg_abs_acf_abs_returns = 0.0;
    Eigen::Index trend_count = -1; // -1 = not computable
    std::vector<double> trend_ratios;
    std::vector<RollingPoint> rolling;
    std::vector<double> acf_returns;
    std::vector<double> acf_abs_returns;
};

struct IndexMetrics {
    double kurtosis = 0.0, skewness = 0.0;
    double avg_abs_acf_returns = 0.0;
    double avg_abs_acf_abs_returns = 0.0;
    Eigen::Index trend_count = -1;
    std::vector<double> acf_returns;
    std::vector<double> acf_abs_returns;
};

struct MetricsReport {
    MetricsOptions options;
    Eigen::Index asset_count = 0, day_count = 0;
    std::vector<AssetMetrics> assets;
    Eigen::MatrixXd correlation;
    std::vector<double> similarity;
    IndexMetrics index;
    BoxSummary kurtosis_box, skewness_box;
    BoxSummary avg_abs_acf_returns_box, avg_abs_acf_abs_returns_box;
    BoxSummary trend_ratio_box; // pooled over assets
    BoxSummary similarity_box;
};

// The full battery. Per-metric failures (degenerate series, too-short
// panel) are recorded as NaN / absent entries, never thrown.
MetricsReport panel_report(const ReturnPanel& r, const MetricsOptions& opt = {});

void save_metrics_report(const std::filesystem::path& path, const MetricsReport& report);
MetricsReport load_metrics_report(const std::filesystem::path& path);

// Flat per-family CSVs plus plot-ready series files, written under dir.
// Returns the relative file names written.
std::vector<std::string> write_metrics_csvs(const std::filesystem::path& dir,
                                            const MetricsReport& report);

struct CompareRow {
    std::string metric;
    double a_median = 0, b_median = 0;
    double a_mean = 0, b_mean = 0;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    // Mean |corr_a - corr_b| over off-diagonal pairs; NaN when the panels
    // have different asset counts (distributions still compared above).
    double correlation_mad = 0.0;
    double similarity_mean_delta = 0.0;
};

CompareReport compare_reports(const MetricsReport& a, const MetricsReport& b);
void save_compare_report(const std::filesystem::path& path, const CompareReport& report);
std::string render_compare_table(const CompareReport& report);

} // namespace scengen
