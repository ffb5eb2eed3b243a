#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "helpers.hpp"
#include "scengen/metrics.hpp"
#include "scengen/rng.hpp"

using namespace scengen;

namespace {

std::vector<double> gaussian_series(size_t n, unsigned seed, double mu = 0.0, double sd = 1.0) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> g(mu, sd);
    std::vector<double> x(n);
    for (auto& v : x) v = g(eng);
    return x;
}

} // namespace

TEST_CASE("moment estimators: analytic cases") {
    // symmetric two-point distribution: kurtosis 1, skewness 0
    std::vector<double> two;
    for (int i = 0; i < 100; ++i) two.push_back(i % 2 == 0 ? 0.03 : -0.03);
    CHECK(kurtosis(two) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(skewness(two) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    // degenerate series
    std::vector<double> flat(50, 0.01);
    CHECK_THROWS_WITH_AS(kurtosis(flat), doctest::Contains("degenerate"), DataError);
    CHECK_THROWS_WITH_AS(skewness(flat), doctest::Contains("degenerate"), DataError);
    std::vector<double> tiny{0.01, 0.01, 0.01};
    CHECK_THROWS_AS(kurtosis(tiny), std::invalid_argument); // below the length floor
}

TEST_CASE("moment estimators: Monte Carlo anchor") {
    auto x = gaussian_series(1000000, 42);
    CHECK(kurtosis(x) == doctest::Approx(3.0).epsilon(0.05 / 3.0));
    CHECK(std::abs(skewness(x)) < 0.01);
}

TEST_CASE("moment estimators match the naive oracle") {
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        auto x = gaussian_series(1500, seed, 0.0005, 0.012);
        CHECK(kurtosis(x) == doctest::Approx(oracle::kurtosis(x)).epsilon(1e-12));
        CHECK(skewness(x) == doctest::Approx(oracle::skewness(x)).epsilon(1e-12));
    }
}

TEST_CASE("rolling_moments positions and degenerate windows") {
    auto x = gaussian_series(180, 1);
    auto one = rolling_moments(x, 180, 5);
    REQUIRE(one.size() == 1);
    CHECK(one[0].t == 0);
    // window = length: agrees with the whole-series metric
    CHECK(one[0].kurtosis == doctest::Approx(kurtosis(x)).epsilon(1e-12));
    CHECK(one[0].skewness == doctest::Approx(skewness(x)).epsilon(1e-12));

    auto x190 = gaussian_series(190, 2);
    auto three = rolling_moments(x190, 180, 5);
    REQUIRE(three.size() == 3);
    CHECK(three[0].t == 0);
    CHECK(three[1].t == 5);
    CHECK(three[2].t == 10);

    std::vector<double> flat(200, 0.0);
    auto degen = rolling_moments(flat, 180, 5);
    for (const auto& pt : degen) CHECK(std::isnan(pt.kurtosis));

    CHECK_THROWS_AS(rolling_moments(x, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(rolling_moments(x, 181, 5), std::invalid_argument);
}

TEST_CASE("rolling_moments Gaussian envelope") {
    auto x = gaussian_series(3600, 9);
    auto pts = rolling_moments(x, 180, 5);
    REQUIRE(pts.size() == (3600 - 180) / 5 + 1);
    size_t inside = 0;
    for (const auto& pt : pts)
        if (pt.kurtosis > 2.3 && pt.kurtosis < 3.9) ++inside;
    CHECK(static_cast<double>(inside) / static_cast<double>(pts.size()) >= 0.9);
}

TEST_CASE("acf analytic and anchor values") {
    std::vector<double> alt;
    for (int i = 0; i < 200; ++i) alt.push_back(i % 2 == 0 ? 0.02 : -0.02);
    auto a = acf(alt, 2);
    CHECK(a[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(std::abs(acf_bound(4108) - 0.0312) < 5e-5);
    CHECK(acf_bound(2000) == doctest::Approx(2.0 / std::sqrt(2000.0)).epsilon(1e-15));
}

TEST_CASE("acf matches the naive oracle and stays bounded") {
    for (unsigned seed : {3u, 4u, 5u}) {
        auto x = gaussian_series(1200, seed);
        auto got = acf(x, 100);
        auto want = oracle::acf(x, 100);
        REQUIRE(got.size() == 100);
        for (size_t k = 0; k < 100; ++k) {
            CHECK(got[k] == doctest::Approx(want[k]).scale(1.0).epsilon(1e-10));
            CHECK(std::abs(got[k]) <= 1.0 + 1e-12);
        }
        CHECK(avg_abs_acf(x, 100) ==
              doctest::Approx([&] {
                  double s = 0;
                  for (double v : want) s += std::abs(v);
                  return s / 100.0;
              }()).epsilon(1e-10));
    }
}

TEST_CASE("white noise stays under the reading-guide bound") {
    for (unsigned seed : {11u, 12u, 13u}) {
        auto x = gaussian_series(4108, seed);
        CHECK(avg_abs_acf(x, 20) < 0.025);
    }
}

TEST_CASE("correlation_map analytic and oracle") {
    auto r = testutil::random_panel(5, 400, 31);
    ReturnPanel p;
    p.assets = {"A", "NEG"};
    p.days = r.days;
    p.returns.resize(2, 400);
    p.returns.row(0) = r.returns.row(0);
    p.returns.row(1) = -r.returns.row(0);
    auto c2 = correlation_map(p);
    CHECK(c2(0, 0) == 1.0);
    CHECK(c2(1, 1) == 1.0);
    CHECK(c2(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));

    auto c = correlation_map(r);
    auto want = oracle::correlation(r.returns);
    CHECK((c - want).cwiseAbs().maxCoeff() < 1e-12);

    // symmetric with a PSD-ish spectrum
    CHECK((c - c.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);

    // interval form matches the oracle on the slice
    auto cw = correlation_map(r, 100, 50);
    auto wantw = oracle::correlation(r.returns.middleCols(100, 50));
    CHECK((cw - wantw).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("correlation_map flags degenerate assets") {
    auto r = testutil::random_panel(3, 100, 8);
    r.returns.row(1).setConstant(0.004);
    auto c = correlation_map(r);
    CHECK(std::isnan(c(0, 1)));
    CHECK(std::isnan(c(1, 2)));
    CHECK(c(1, 1) == 1.0);
    CHECK(!std::isnan(c(0, 2)));
}

TEST_CASE("directional_similarity stated examples") {
    // identical rising assets: perfect agreement
    ReturnPanel r;
    r.assets = {"A", "B", "C"};
    r.returns = Eigen::MatrixXd::Constant(3, 120, 0.002);
    for (int t = 0; t < 120; ++t) r.days.push_back("d" + std::to_string(t + 1));
    auto vals = directional_similarity(r, 50, 1);
    REQUIRE(vals.size() == 120 - 50 + 1);
    for (double v : vals) CHECK(v == 1.0);

    // strict opposition with a drifting index: half agree
    ReturnPanel o;
    o.assets = {"UP", "DOWN"};
    o.returns.resize(2, 120);
    o.returns.row(0).setConstant(0.004);
    o.returns.row(1).setConstant(-0.002);
    o.days = r.days;
    auto half = directional_similarity(o, 50, 1);
    for (double v : half) CHECK(v == 0.5);
}

TEST_CASE("directional_similarity near half for independent assets") {
    auto r = testutil::random_panel(100, 600, 77);
    auto vals = directional_similarity(r, 50, 1);
    double m = 0;
    for (double v : vals) m += v;
    m /= static_cast<double>(vals.size());
    CHECK(m > 0.4);
    CHECK(m < 0.6);
}

TEST_CASE("summarize_box against a type-7 oracle") {
    std::mt19937_64 eng(4);
    std::uniform_real_distribution<double> u(-1.0, 3.0);
    for (size_t n : {5u, 6u, 101u, 200u}) {
        std::vector<double> v(n);
        for (auto& x : v) x = u(eng);
        auto box = summarize_box(v);
        std::sort(v.begin(), v.end());
        const double q1 = oracle::quantile7(v, 0.25);
        const double q2 = oracle::quantile7(v, 0.5);
        const double q3 = oracle::quantile7(v, 0.75);
        CHECK(box.n == static_cast<Eigen::Index>(n));
        CHECK(box.min == v.front());
        CHECK(box.max == v.back());
        CHECK(box.q1 == doctest::Approx(q1).epsilon(1e-12));
        CHECK(box.median == doctest::Approx(q2).epsilon(1e-12));
        CHECK(box.q3 == doctest::Approx(q3).epsilon(1e-12));
        const double iqr = q3 - q1;
        size_t outliers = 0;
        for (double x : v)
            if (x < q1 - 1.5 * iqr || x > q3 + 1.5 * iqr) ++outliers;
        CHECK(box.n_outliers == static_cast<Eigen::Index>(outliers));
        CHECK(box.lo_whisker >= q1 - 1.5 * iqr);
        CHECK(box.hi_whisker <= q3 + 1.5 * iqr);
    }

    // NaNs are dropped
    std::vector<double> with_nan = {1.0, std::nan(""), 2.0, 3.0};
    auto box = summarize_box(with_nan);
    CHECK(box.n == 3);
    CHECK(box.median == 2.0);
}

TEST_CASE("panel_report on a degenerate one-asset panel") {
    ReturnPanel r;
    r.assets = {"A"};
    r.returns = Eigen::MatrixXd::Constant(1, 300, 0.001);
    for (int t = 0; t < 300; ++t) r.days.push_back("d" + std::to_string(t + 1));
    auto rep = panel_report(r);
    REQUIRE(rep.assets.size() == 1);
    CHECK(std::isnan(rep.assets[0].kurtosis));
    CHECK(std::isnan(rep.assets[0].skewness));
    CHECK(rep.assets[0].trend_count == 1);
    CHECK(rep.asset_count == 1);
    CHECK(rep.day_count == 300);
}

TEST_CASE("panel_report is permutation-equivariant and thread-count independent") {
    auto r = testutil::random_panel(8, 400, 15, 0.015);
    MetricsOptions opt;
    opt.acf_lags_abs = 50;
    auto rep = panel_report(r, opt);

    // reversed asset order
    ReturnPanel perm;
    perm.days = r.days;
    perm.returns.resize(8, 400);
    for (Eigen::Index i = 0; i < 8; ++i) {
        perm.assets.push_back(r.assets[static_cast<size_t>(7 - i)]);
        perm.returns.row(i) = r.returns.row(7 - i);
    }
    auto rep_p = panel_report(perm, opt);

    for (Eigen::Index i = 0; i < 8; ++i) {
        const auto& a = rep.assets[static_cast<size_t>(i)];
        const auto& b = rep_p.assets[static_cast<size_t>(7 - i)];
        CHECK(a.asset == b.asset);
        CHECK(a.kurtosis == b.kurtosis);
        CHECK(a.skewness == b.skewness);
        CHECK(a.avg_abs_acf_returns == b.avg_abs_acf_returns);
        CHECK(a.trend_count == b.trend_count);
        for (Eigen::Index j = 0; j < 8; ++j)
            CHECK(std::abs(rep.correlation(i, j) - rep_p.correlation(7 - i, 7 - j)) < 1e-14);
    }
    // index metrics go through a cross-asset mean, so row order can move
    // the last ulp
    CHECK(rep.index.kurtosis == doctest::Approx(rep_p.index.kurtosis).epsilon(1e-12));
    CHECK(rep.kurtosis_box.median == rep_p.kurtosis_box.median);
    CHECK(rep.trend_ratio_box.median == rep_p.trend_ratio_box.median);
    REQUIRE(rep.similarity.size() == rep_p.similarity.size());
    for (size_t k = 0; k < rep.similarity.size(); ++k)
        CHECK(rep.similarity[k] == doctest::Approx(rep_p.similarity[k]).scale(1.0).epsilon(1e-12));

    // worker count must not change a single bit
    MetricsOptions threaded = opt;
    threaded.threads = 4;
    auto rep_t = panel_report(r, threaded);
    for (size_t i = 0; i < 8; ++i) {
        CHECK(rep.assets[i].kurtosis == rep_t.assets[i].kurtosis);
        CHECK(rep.assets[i].acf_abs_returns == rep_t.assets[i].acf_abs_returns);
        CHECK(rep.assets[i].trend_ratios == rep_t.assets[i].trend_ratios);
    }
    CHECK(rep.correlation == rep_t.correlation);
}

TEST_CASE("metrics are invariant under positive price rescaling") {
    auto r = testutil::random_panel(4, 500, 19, 0.012);
    auto prices = returns_to_prices(r);
    PricePanel scaled = prices;
    scaled.prices *= 37.5;
    auto r2 = to_returns(scaled);

    auto rep1 = panel_report(r);
    auto rep2 = panel_report(r2);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(rep1.assets[i].kurtosis ==
              doctest::Approx(rep2.assets[i].kurtosis).epsilon(1e-9));
        CHECK(rep1.assets[i].trend_count == rep2.assets[i].trend_count);
    }
    CHECK(rep1.index.kurtosis == doctest::Approx(rep2.index.kurtosis).epsilon(1e-9));
}

TEST_CASE("index skewness of a symmetric panel is near zero") {
    auto r = testutil::random_panel(10, 5000, 23, 0.01);
    auto rep = panel_report(r);
    CHECK(std::abs(rep.index.skewness) < 0.15);
}

TEST_CASE("report JSON round trip preserves NaN and all values") {
    testutil::TempDir td;
    auto r = testutil::random_panel(5, 400, 3, 0.015);
    r.returns.row(2).setConstant(0.0); // degenerate asset -> NaNs in the report
    auto rep = panel_report(r);
    REQUIRE(std::isnan(rep.assets[2].kurtosis));

    auto path = td.path() / "report.json";
    save_metrics_report(path, rep);
    auto rep2 = load_metrics_report(path);

    CHECK(rep2.asset_count == rep.asset_count);
    CHECK(rep2.day_count == rep.day_count);
    REQUIRE(rep2.assets.size() == rep.assets.size());
    for (size_t i = 0; i < rep.assets.size(); ++i) {
        const auto& a = rep.assets[i];
        const auto& b = rep2.assets[i];
        CHECK(a.asset == b.asset);
        CHECK((std::isnan(a.kurtosis) ? std::isnan(b.kurtosis) : a.kurtosis == b.kurtosis));
        CHECK(a.acf_returns == b.acf_returns);
        CHECK(a.trend_ratios == b.trend_ratios);
        CHECK(a.trend_count == b.trend_count);
        REQUIRE(a.rolling.size() == b.rolling.size());
        for (size_t j = 0; j < a.rolling.size(); ++j) {
            CHECK(a.rolling[j].t == b.rolling[j].t);
            CHECK((std::isnan(a.rolling[j].kurtosis)
                       ? std::isnan(b.rolling[j].kurtosis)
                       : a.rolling[j].kurtosis == b.rolling[j].kurtosis));
        }
    }
    for (Eigen::Index i = 0; i < rep.correlation.rows(); ++i)
        for (Eigen::Index j = 0; j < rep.correlation.cols(); ++j) {
            const double x = rep.correlation(i, j), y = rep2.correlation(i, j);
            CHECK((std::isnan(x) ? std::isnan(y) : x == y));
        }
    CHECK(rep2.similarity == rep.similarity);
    CHECK(rep2.kurtosis_box.median == rep.kurtosis_box.median);
    CHECK(rep2.options.theta == rep.options.theta);

    // resaving the loaded report is byte-identical
    save_metrics_report(td.path() / "report2.json", rep2);
    CHECK(testutil::same_bytes(path, td.path() / "report2.json"));
}

TEST_CASE("write_metrics_csvs writes the full family") {
    testutil::TempDir td;
    auto r = testutil::random_panel(4, 300, 6, 0.015);
    auto rep = panel_report(r);
    auto files = write_metrics_csvs(td.path(), rep);
    CHECK(files.size() == 9);
    for (const auto& f : files) {
        CAPTURE(f);
        CHECK(std::filesystem::exists(td.path() / f));
        CHECK(std::filesystem::file_size(td.path() / f) > 0);
    }
    auto per_asset = testutil::slurp(td.path() / "metrics_per_asset.csv");
    CHECK(per_asset.find("kurtosis") != std::string::npos);
    CHECK(per_asset.find("A0") != std::string::npos);
    auto corr = testutil::slurp(td.path() / "metrics_correlation.csv");
    // header + S^2 triplets
    CHECK(std::count(corr.begin(), corr.end(), '\n') == 17);
    auto acf_csv = testutil::slurp(td.path() / "metrics_acf_returns.csv");
    CHECK(acf_csv.find("(index)") != std::string::npos);
}

TEST_CASE("compare_reports of a panel with itself is all zeros") {
    auto r = testutil::random_panel(6, 350, 9, 0.015);
    auto rep = panel_report(r);
    auto cmp = compare_reports(rep, rep);
    REQUIRE(cmp.rows.size() == 10);
    for (const auto& row : cmp.rows) {
        CAPTURE(row.metric);
        if (!std::isnan(row.a_median)) {
            CHECK(row.a_median == row.b_median);
            CHECK(row.a_mean == row.b_mean);
        }
    }
    CHECK(cmp.correlation_mad == 0.0);
    CHECK(cmp.similarity_mean_delta == 0.0);

    auto table = render_compare_table(cmp);
    CHECK(table.find("kurtosis") != std::string::npos);
    CHECK(table.find("median") != std::string::npos);
}

TEST_CASE("compare_reports across asset counts falls back to distributions") {
    auto a = panel_report(testutil::random_panel(5, 300, 1, 0.015));
    auto b = panel_report(testutil::random_panel(7, 300, 2, 0.015));
    auto cmp = compare_reports(a, b);
    CHECK(cmp.rows.size() == 10);
    CHECK(std::isnan(cmp.correlation_mad));
    bool has_kurt = false;
    for (const auto& row : cmp.rows)
        if (row.metric == "kurtosis") {
            has_kurt = true;
            CHECK(std::isfinite(row.a_median));
            CHECK(std::isfinite(row.b_median));
        }
    CHECK(has_kurt);

    testutil::TempDir td;
    save_compare_report(td.path() / "compare.json", cmp);
    CHECK(std::filesystem::file_size(td.path() / "compare.json") > 0);
}
