#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "scengen/synthesis.hpp"

using namespace scengen;

namespace {

// one up + one down trend, each a single zero-variance window
TrendLibrary toy_library(Eigen::Index days_per_trend, double up_mu, double down_mu) {
    TrendLibrary lib;
    lib.assets = {"A"};
    lib.theta = 0.05;
    lib.window_len_L = days_per_trend;

    auto make = [&](TrendSign sign, double mu) {
        AnalyzedTrend t;
        t.sign = sign;
        WindowParams w;
        w.mu = Eigen::VectorXd::Constant(1, mu);
        w.factor = Eigen::MatrixXd::Zero(1, 1);
        w.window_len = days_per_trend;
        t.windows.push_back(w);
        return t;
    };
    lib.trends.push_back(make(TrendSign::upward, up_mu));
    lib.trends.push_back(make(TrendSign::downward, down_mu));
    return lib;
}

} // namespace

TEST_CASE("hypothesize_trend_sequence covers the target and alternates") {
    auto lib = toy_library(60, 0.01, -0.01);
    auto rng = RngStream::substream(5, 0);
    auto seq = hypothesize_trend_sequence(lib, 150, FirstSign::upward, rng);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].sign == TrendSign::upward);
    CHECK(seq[1].sign == TrendSign::downward);
    CHECK(seq[2].sign == TrendSign::upward);

    // minimal cover: without the last trend the target is missed
    Eigen::Index days = 0;
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        days += lib.trends[static_cast<size_t>(seq[i].library_index)].day_count();
    CHECK(days < 150);
}

TEST_CASE("hypothesize_trend_sequence is deterministic per seed") {
    auto r = testutil::random_panel(3, 600, 2, 0.02);
    auto lib = build_trend_library(r, 0.03, 20);
    auto rng1 = RngStream::substream(9, 0);
    auto rng2 = RngStream::substream(9, 0);
    auto a = hypothesize_trend_sequence(lib, 400, FirstSign::random, rng1);
    auto b = hypothesize_trend_sequence(lib, 400, FirstSign::random, rng2);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].library_index == b[i].library_index);
        CHECK(a[i].sign == b[i].sign);
        if (i > 0) CHECK(a[i].sign != a[i - 1].sign);
        CHECK(lib.trends[static_cast<size_t>(a[i].library_index)].sign == a[i].sign);
    }
}

TEST_CASE("sample_window degenerate and scalar cases") {
    WindowParams zero;
    zero.mu = Eigen::Vector2d(0.01, -0.02);
    zero.factor = Eigen::MatrixXd::Zero(2, 3);
    zero.window_len = 5;
    auto rng = RngStream::substream(1, 0);
    auto block = sample_window(zero, rng);
    REQUIRE(block.rows() == 2);
    REQUIRE(block.cols() == 5);
    for (Eigen::Index j = 0; j < 5; ++j) CHECK(block.col(j) == zero.mu);

    // standard normal scalar: law-of-large-numbers bounds at 1e6 draws
    WindowParams std1;
    std1.mu = Eigen::VectorXd::Zero(1);
    std1.factor = Eigen::MatrixXd::Identity(1, 1);
    std1.window_len = 1000000;
    auto rng2 = RngStream::substream(2, 0);
    auto draws = sample_window(std1, rng2);
    const double mean = draws.row(0).mean();
    const double var = (draws.row(0).array() - mean).square().sum() / (1e6 - 1.0);
    CHECK(std::abs(mean) < 0.004);
    CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("sample_window respects a rank-deficient support") {
    WindowParams p;
    p.mu = Eigen::Vector3d(0.001, -0.002, 0.0005);
    p.factor.resize(3, 2);
    p.factor << 0.01, 0.0, 0.004, 0.006, -0.003, 0.002;
    p.window_len = 20000;
    auto rng = RngStream::substream(3, 0);
    auto draws = sample_window(p, rng);

    // null direction of the factor's column span
    Eigen::Vector3d a = p.factor.col(0), b = p.factor.col(1);
    Eigen::Vector3d null_dir = a.cross(b).normalized();
    for (Eigen::Index j = 0; j < draws.cols(); ++j)
        CHECK(std::abs(null_dir.dot(draws.col(j) - p.mu)) < 1e-10);

    // covariance approaches factor*factor^T; the (1,2) entry is exactly
    // zero, so allow a small absolute slack alongside the relative one
    Eigen::Vector3d m = draws.rowwise().mean();
    Eigen::MatrixXd c = draws.colwise() - m;
    Eigen::Matrix3d cov = c * c.transpose() / (static_cast<double>(draws.cols()) - 1.0);
    Eigen::Matrix3d want = p.factor * p.factor.transpose();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(cov(i, j) - want(i, j)) <= 0.05 * std::abs(want(i, j)) + 1e-6);
}

TEST_CASE("synthesize_scenario truncates exactly and labels days") {
    auto lib = toy_library(60, 0.01, -0.01);
    ScenarioSpec spec;
    spec.target_days = 1;
    spec.seed = 7;
    auto one = synthesize_scenario(lib, spec);
    REQUIRE(one.day_count() == 1);
    CHECK(one.days[0] == "d1");
    CHECK(one.assets == lib.assets);

    spec.target_days = 130;
    auto panel = synthesize_scenario(lib, spec);
    REQUIRE(panel.day_count() == 130);
    CHECK(panel.days.back() == "d130");
}

TEST_CASE("synthesize_scenario is deterministic and seed-sensitive") {
    auto r = testutil::random_panel(4, 500, 12, 0.02);
    auto lib = build_trend_library(r, 0.03, 20);
    ScenarioSpec spec;
    spec.target_days = 300;
    spec.seed = 31;
    TrendSequence seq1, seq2;
    auto a = synthesize_scenario(lib, spec, &seq1);
    auto b = synthesize_scenario(lib, spec, &seq2);
    CHECK(a.returns == b.returns);
    REQUIRE(seq1.size() == seq2.size());
    for (size_t i = 0; i < seq1.size(); ++i)
        CHECK(seq1[i].library_index == seq2[i].library_index);

    spec.seed = 32;
    auto c = synthesize_scenario(lib, spec);
    CHECK(a.returns != c.returns);
}

TEST_CASE("zero-factor library replays window means verbatim") {
    auto lib = toy_library(3, 0.02, -0.01);
    ScenarioSpec spec;
    spec.target_days = 8;
    spec.seed = 1;
    spec.forced_sequence = {0, 1, 0};
    auto panel = synthesize_scenario(lib, spec);
    std::vector<double> want = {0.02, 0.02, 0.02, -0.01, -0.01, -0.01, 0.02, 0.02};
    REQUIRE(panel.day_count() == 8);
    for (Eigen::Index t = 0; t < 8; ++t)
        CHECK(panel.returns(0, t) == want[static_cast<size_t>(t)]);
}

TEST_CASE("forced sequence validation") {
    auto lib = toy_library(10, 0.01, -0.01);
    ScenarioSpec spec;
    spec.target_days = 15;
    spec.seed = 4;

    spec.forced_sequence = {0, 1};
    CHECK_NOTHROW(synthesize_scenario(lib, spec));

    spec.forced_sequence = {0, 0};
    CHECK_THROWS_WITH_AS(synthesize_scenario(lib, spec), doctest::Contains("alternate"),
                         std::invalid_argument);

    spec.forced_sequence = {0, 5};
    CHECK_THROWS_WITH_AS(synthesize_scenario(lib, spec), doctest::Contains("out of range"),
                         std::invalid_argument);

    spec.forced_sequence = {0};
    CHECK_THROWS_WITH_AS(synthesize_scenario(lib, spec), doctest::Contains("fewer than target"),
                         std::invalid_argument);
}

TEST_CASE("library sanity checks") {
    TrendLibrary lib = toy_library(10, 0.01, -0.01);
    lib.trends.pop_back(); // drop the downward trend
    ScenarioSpec spec;
    spec.target_days = 5;
    CHECK_THROWS_WITH_AS(synthesize_scenario(lib, spec), doctest::Contains("each sign"),
                         std::invalid_argument);
    auto rng = RngStream::substream(1, 0);
    CHECK_THROWS_AS(hypothesize_trend_sequence(lib, 0, FirstSign::random, rng),
                    std::invalid_argument);
}
