#pragma once

#include <cstdint>
#include <vector>

#include "scengen/panel.hpp"
#include "scengen/rng.hpp"

namespace scengen {

// Rows are loading vectors of length S. `orthonormal` is true only for
// the eigenvector matrix W produced by pca_decompose (W·Wᵀ = I).
struct LoadingMatrix {
    Eigen::MatrixXd rows;
    bool orthonormal = false;
};

// Projected series Y = W·R, one component per row, sorted by descending
// explained variance (eigenvalue).
struct ComponentPanel {
    Eigen::MatrixXd y;
    Eigen::VectorXd eigenvalues;
};

struct LoadingDistribution {
    Eigen::VectorXd mean;
    Eigen::MatrixXd factor; // covariance = factor·factorᵀ
};

struct ExpandOptions {
    double ratio_cap = 12.0;    // discard assets with a trend ratio above this
    double theta = 0.05;        // threshold used for the outlier screen
    int max_redraw_rounds = 10; //
    bool keep_originals = true;
};

struct ExpandResult {
    ReturnPanel panel;
    Eigen::Index discarded = 0; // draws rejected by the outlier screen
    int redraw_rounds = 0;
    bool gave_up = false; // redraw budget exhausted with outliers remaining
};

// Eigen-decomposition of the sample covariance of centered returns; the
// projection itself is applied to the raw returns (Y = W·R). Eigenvector
// signs are fixed so each row's largest-magnitude coordinate is
// positive, making the decomposition independent of solver internals.
void pca_decompose(const ReturnPanel& r, LoadingMatrix& w, ComponentPanel& y);

// Moments of the rows of `loading_rows` treated as observations of an
// S-vector; covariance kept in factor form (rank-deficient by
// construction).
LoadingDistribution fit_loading_distribution(const Eigen::Ref<const Eigen::MatrixXd>& loading_rows);

// `count` i.i.d. rows mean + factor·z. Not renormalized.
LoadingMatrix draw_loadings(const LoadingDistribution& dist, Eigen::Index count, RngStream& rng);

// Artificial assets: decompose, fit the loading distribution over the
// original assets' component profiles (columns of W), draw `extra`
// loading rows, back-project R' = W'·Y. Draws whose price path contains
// a return <= -1 or a trend ratio above opt.ratio_cap are discarded and
// redrawn, up to opt.max_redraw_rounds rounds.
ExpandResult expand_assets(const ReturnPanel& r, Eigen::Index extra, RngStream& rng,
                           const ExpandOptions& opt = {});

} // namespace scengen
