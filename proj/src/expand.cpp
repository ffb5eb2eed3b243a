#include "scengen/expand.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scengen/error.hpp"
#include "scengen/trends.hpp"

namespace scengen {

void pca_decompose(const ReturnPanel& r, LoadingMatrix& w, ComponentPanel& y) {
    const Eigen::Index s = r.returns.rows();
    const Eigen::Index t = r.returns.cols();
    if (s < 2)
        throw std::invalid_argument("pca_decompose: need at least 2 assets");
    if (t < 2)
        throw std::invalid_argument("pca_decompose: need at least 2 days");

    Eigen::VectorXd mean = r.returns.rowwise().mean();
    Eigen::MatrixXd centered = r.returns.colwise() - mean;
    Eigen::MatrixXd cov = centered * centered.transpose() / static_cast<double>(t - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw DataError("pca_decompose: eigen-decomposition failed");

    // Solver returns ascending eigenvalues; flip to descending and fix
    // each eigenvector's arbitrary sign.
    w.rows.resize(s, s);
    y.eigenvalues.resize(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        const Eigen::Index src = s - 1 - i;
        y.eigenvalues[i] = solver.eigenvalues()[src];
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0.0)
            v = -v;
        w.rows.row(i) = v.transpose();
    }
    w.orthonormal = true;
    y.y = w.rows * r.returns;
}

LoadingDistribution fit_loading_distribution(const Eigen::Ref<const Eigen::MatrixXd>& loading_rows) {
    const Eigen::Index n = loading_rows.rows();
    if (n < 2)
        throw std::invalid_argument("fit_loading_distribution: need at least 2 loading rows");
    LoadingDistribution d;
    d.mean = loading_rows.colwise().mean().transpose();
    d.factor = (loading_rows.transpose().colwise() - d.mean) /
               std::sqrt(static_cast<double>(n - 1));
    return d;
}

LoadingMatrix draw_loadings(const LoadingDistribution& dist, Eigen::Index count, RngStream& rng) {
    if (count < 1)
        throw std::invalid_argument("draw_loadings: count must be >= 1");
    const Eigen::Index s = dist.mean.size();
    const Eigen::Index k = dist.factor.cols();
    LoadingMatrix out;
    out.rows.resize(count, s);
    out.orthonormal = false;
    Eigen::VectorXd z(k);
    for (Eigen::Index i = 0; i < count; ++i) {
        for (Eigen::Index j = 0; j < k; ++j)
            z[j] = rng.normal();
        out.rows.row(i) = (dist.mean + dist.factor * z).transpose();
    }
    return out;
}

namespace {

// Outlier screen of one candidate return series: reject broken price
// paths outright, otherwise reject when any trend moves more than
// ratio_cap times the detection threshold.
bool passes_screen(const Eigen::Ref<const Eigen::VectorXd>& returns, double theta,
                   double ratio_cap) {
    std::vector<double> prices(static_cast<size_t>(returns.size()) + 1);
    prices[0] = 1.0;
    for (Eigen::Index t = 0; t < returns.size(); ++t) {
        if (!(returns[t] > -1.0) || !std::isfinite(returns[t]))
            return false;
        prices[static_cast<size_t>(t) + 1] = prices[static_cast<size_t>(t)] * (1.0 + returns[t]);
    }
    for (const auto& seg : detect_trends(prices, theta))
        if (trend_ratio(seg) > ratio_cap)
            return false;
    return true;
}

} // namespace

ExpandResult expand_assets(const ReturnPanel& r, Eigen::Index extra, RngStream& rng,
                           const ExpandOptions& opt) {
    if (extra < 0)
        throw std::invalid_argument("expand_assets: extra must be >= 0");

    ExpandResult res;
    if (extra == 0 && opt.keep_originals) {
        res.panel = r;
        return res;
    }

    LoadingMatrix w;
    ComponentPanel comp;
    pca_decompose(r, w, comp);
    // Observations are the original assets' component profiles: asset i
    // reconstructs as (column i of W)ᵀ·Y, so its profile is Wᵀ's row i.
    LoadingDistribution dist = fit_loading_distribution(w.rows.transpose());

    Eigen::MatrixXd artificial(extra, r.returns.cols());
    Eigen::Index produced = 0;
    Eigen::Index want = extra;
    for (int round = 0; want > 0; ++round) {
        const bool last = round >= opt.max_redraw_rounds;
        LoadingMatrix drawn = draw_loadings(dist, want, rng);
        Eigen::MatrixXd cand = drawn.rows * comp.y;
        Eigen::Index kept = 0;
        for (Eigen::Index i = 0; i < cand.rows(); ++i) {
            const bool ok = passes_screen(cand.row(i).transpose(), opt.theta, opt.ratio_cap);
            if (ok || last) {
                artificial.row(produced++) = cand.row(i);
                ++kept;
                if (!ok)
                    res.gave_up = true;
            } else {
                ++res.discarded;
            }
        }
        if (round > 0)
            res.redraw_rounds = round;
        want -= kept;
        if (last)
            break;
    }

    const Eigen::Index s0 = opt.keep_originals ? r.returns.rows() : 0;
    res.panel.returns.resize(s0 + extra, r.returns.cols());
    res.panel.days = r.days;
    if (opt.keep_originals) {
        res.panel.returns.topRows(s0) = r.returns;
        res.panel.assets = r.assets;
    }
    res.panel.returns.bottomRows(extra) = artificial;
    for (Eigen::Index i = 0; i < extra; ++i) {
        std::string id = std::to_string(i + 1);
        while (id.size() < 4) id.insert(id.begin(), '0');
        res.panel.assets.push_back("synth-" + id);
    }
    return res;
}

} // namespace scengen
