#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "scengen/expand.hpp"
#include "scengen/fixture.hpp"
#include "scengen/trends.hpp"

using namespace scengen;

TEST_CASE("pca_decompose on two perfectly correlated assets") {
    ReturnPanel r = testutil::random_panel(1, 400, 3, 0.02);
    ReturnPanel two;
    two.assets = {"A", "B"};
    two.days = r.days;
    two.returns.resize(2, 400);
    two.returns.row(0) = r.returns.row(0);
    two.returns.row(1) = 2.0 * r.returns.row(0);

    LoadingMatrix w;
    ComponentPanel y;
    pca_decompose(two, w, y);
    REQUIRE(y.eigenvalues.size() == 2);
    CHECK(y.eigenvalues[0] > 0.0);
    CHECK(std::abs(y.eigenvalues[1]) < 1e-12 * y.eigenvalues[0]);
    CHECK(w.orthonormal);
}

TEST_CASE("pca_decompose recovers an isotropic spectrum") {
    auto r = testutil::random_panel(2, 100000, 5, 1.0);
    LoadingMatrix w;
    ComponentPanel y;
    pca_decompose(r, w, y);
    CHECK(y.eigenvalues[0] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(y.eigenvalues[1] == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("pca_decompose invariants and oracle agreement") {
    for (unsigned seed : {1u, 2u, 3u}) {
        auto r = testutil::random_panel(6, 500, seed, 0.02);
        LoadingMatrix w;
        ComponentPanel y;
        pca_decompose(r, w, y);

        // orthonormal rows
        Eigen::MatrixXd eye = w.rows * w.rows.transpose();
        CHECK((eye - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);

        // projection round trip
        CHECK((w.rows.transpose() * y.y - r.returns).cwiseAbs().maxCoeff() < 1e-10);

        // descending eigenvalues; sign fix puts each row's largest entry positive
        for (Eigen::Index i = 1; i < 6; ++i) CHECK(y.eigenvalues[i] <= y.eigenvalues[i - 1]);
        for (Eigen::Index i = 0; i < 6; ++i) {
            Eigen::Index arg = 0;
            w.rows.row(i).cwiseAbs().maxCoeff(&arg);
            CHECK(w.rows(i, arg) > 0.0);
        }

        // W diagonalizes the two-pass covariance oracle with the stated spectrum
        Eigen::MatrixXd cov = oracle::covariance(r.returns);
        Eigen::MatrixXd d = w.rows * cov * w.rows.transpose();
        for (Eigen::Index i = 0; i < 6; ++i) {
            CHECK(d(i, i) == doctest::Approx(y.eigenvalues[i]).epsilon(1e-10));
            for (Eigen::Index j = 0; j < 6; ++j)
                if (i != j) CHECK(std::abs(d(i, j)) < 1e-12);
        }

        // eigenvalues sum to total variance
        CHECK(y.eigenvalues.sum() == doctest::Approx(cov.trace()).epsilon(1e-12));
    }
}

TEST_CASE("fit_loading_distribution moments") {
    Eigen::MatrixXd rows(2, 2);
    rows << 1, 0, 0, 1;
    auto d = fit_loading_distribution(rows);
    CHECK(d.mean == Eigen::Vector2d(0.5, 0.5));

    Eigen::MatrixXd same = Eigen::MatrixXd::Constant(4, 3, 0.25);
    auto dz = fit_loading_distribution(same);
    CHECK(dz.factor.cwiseAbs().maxCoeff() < 1e-15);

    // random orthonormal 10x10 via QR
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(10, 10);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ();
    auto dq = fit_loading_distribution(q);
    Eigen::VectorXd mean_want = Eigen::VectorXd::Zero(10);
    for (Eigen::Index i = 0; i < 10; ++i) mean_want += q.row(i).transpose();
    mean_want /= 10.0;
    CHECK((dq.mean - mean_want).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::MatrixXd cov_want = oracle::covariance(q.transpose());
    CHECK((dq.factor * dq.factor.transpose() - cov_want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("draw_loadings determinism and convergence") {
    Eigen::MatrixXd rows(4, 3);
    rows << 0.9, 0.1, 0.0, 1.1, -0.1, 0.2, 1.0, 0.0, -0.2, 0.8, 0.2, 0.1;
    auto d = fit_loading_distribution(rows);

    auto r1 = RngStream::substream(11, 0);
    auto r2 = RngStream::substream(11, 0);
    auto a = draw_loadings(d, 50, r1);
    auto b = draw_loadings(d, 50, r2);
    CHECK(a.rows == b.rows);
    CHECK(!a.orthonormal);

    LoadingDistribution degen = d;
    degen.factor.setZero();
    auto rz = RngStream::substream(12, 0);
    auto z = draw_loadings(degen, 7, rz);
    for (Eigen::Index i = 0; i < 7; ++i)
        CHECK((z.rows.row(i).transpose() - d.mean).cwiseAbs().maxCoeff() < 1e-15);

    auto rm = RngStream::substream(13, 0);
    auto many = draw_loadings(d, 10000, rm);
    Eigen::VectorXd mean = many.rows.colwise().mean().transpose();
    CHECK((mean - d.mean).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("expand_assets identity and reconstruction") {
    auto r = testutil::random_panel(8, 400, 21, 0.015);
    auto rng = RngStream::substream(1, 0);
    auto res = expand_assets(r, 0, rng);
    CHECK(res.panel.returns == r.returns);
    CHECK(res.panel.assets == r.assets);
    CHECK(res.discarded == 0);

    // replaying the original eigenvector profiles reproduces the assets
    LoadingMatrix w;
    ComponentPanel y;
    pca_decompose(r, w, y);
    Eigen::MatrixXd self = w.rows.transpose() * y.y;
    CHECK((self - r.returns).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("expand_assets shapes, ids and determinism") {
    FixtureOptions fo;
    fo.assets = 20;
    fo.days = 600;
    fo.seed = 8;
    auto returns = to_returns(make_fixture(fo));

    auto rng1 = RngStream::substream(5, 0);
    auto res1 = expand_assets(returns, 12, rng1);
    REQUIRE(res1.panel.asset_count() == 32);
    CHECK(res1.panel.day_count() == 600);
    CHECK(res1.panel.assets[20] == "synth-0001");
    CHECK(res1.panel.assets[31] == "synth-0012");
    CHECK(res1.panel.returns.topRows(20) == returns.returns);

    auto rng2 = RngStream::substream(5, 0);
    auto res2 = expand_assets(returns, 12, rng2);
    CHECK(res1.panel.returns == res2.panel.returns);

    ExpandOptions drop;
    drop.keep_originals = false;
    auto rng3 = RngStream::substream(5, 0);
    auto res3 = expand_assets(returns, 12, rng3, drop);
    REQUIRE(res3.panel.asset_count() == 12);
    CHECK(res3.panel.returns == res1.panel.returns.bottomRows(12));
    CHECK(res3.panel.assets[0] == "synth-0001");

    // artificial variance stays in a loose band around the original range
    Eigen::VectorXd ovar(20), avar(12);
    auto rowvar = [](const Eigen::MatrixXd& m, Eigen::Index i) {
        Eigen::RowVectorXd row = m.row(i);
        double mu = row.mean();
        return (row.array() - mu).square().sum() / (static_cast<double>(row.size()) - 1.0);
    };
    for (Eigen::Index i = 0; i < 20; ++i) ovar[i] = rowvar(returns.returns, i);
    for (Eigen::Index i = 0; i < 12; ++i) avar[i] = rowvar(res3.panel.returns, i);
    CHECK(avar.minCoeff() > 0.1 * ovar.minCoeff());
    CHECK(avar.maxCoeff() < 10.0 * ovar.maxCoeff());
}

TEST_CASE("outlier screen discards and eventually gives up") {
    FixtureOptions fo;
    fo.assets = 10;
    fo.days = 500;
    fo.seed = 3;
    auto returns = to_returns(make_fixture(fo));

    // an impossible cap: every draw fails, the budget runs out
    ExpandOptions strict;
    strict.ratio_cap = 0.01;
    auto rng = RngStream::substream(7, 0);
    auto res = expand_assets(returns, 5, rng, strict);
    CHECK(res.gave_up);
    CHECK(res.redraw_rounds == strict.max_redraw_rounds);
    CHECK(res.discarded == 5 * strict.max_redraw_rounds);
    REQUIRE(res.panel.asset_count() == 15); // kept anyway, with a warning flag

    // a mild cap triggers at least one redraw but succeeds
    ExpandOptions mild;
    mild.ratio_cap = 12.0;
    auto rng2 = RngStream::substream(7, 0);
    auto res2 = expand_assets(returns, 30, rng2, mild);
    CHECK(res2.discarded >= 1);
    CHECK(res2.redraw_rounds >= 1);
    CHECK(!res2.gave_up);
    REQUIRE(res2.panel.asset_count() == 40);

    // every kept artificial asset honors the cap
    for (Eigen::Index i = 10; i < 40; ++i) {
        std::vector<double> prices{1.0};
        for (Eigen::Index t = 0; t < res2.panel.day_count(); ++t)
            prices.push_back(prices.back() * (1.0 + res2.panel.returns(i, t)));
        for (const auto& seg : detect_trends(prices, mild.theta))
            CHECK(trend_ratio(seg) <= mild.ratio_cap);
    }
}

TEST_CASE("expand_assets argument validation") {
    auto r = testutil::random_panel(4, 100, 2);
    auto rng = RngStream::substream(1, 0);
    CHECK_THROWS_AS(expand_assets(r, -1, rng), std::invalid_argument);

    ReturnPanel one = testutil::random_panel(1, 100, 2);
    CHECK_THROWS_AS(expand_assets(one, 2, rng), std::invalid_argument);
}
