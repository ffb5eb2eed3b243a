// Python bindings. Matrices cross the boundary as numpy arrays (copied);
// everything else is bound structs mirroring the C++ types.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "scengen/analysis.hpp"
#include "scengen/baselines.hpp"
#include "scengen/expand.hpp"
#include "scengen/fixture.hpp"
#include "scengen/metrics.hpp"
#include "scengen/panel.hpp"
#include "scengen/panel_io.hpp"
#include "scengen/synthesis.hpp"
#include "scengen/trends.hpp"

namespace py = pybind11;
using namespace scengen;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Trend-segmented market scenario generation";

    auto data_error = py::register_exception<DataError>(m, "DataError");
    py::register_exception<ParseError>(m, "ParseError", data_error.ptr());
    py::register_exception<GarchFitError>(m, "GarchFitError", data_error.ptr());

    // ---- panels --------------------------------------------------------
    py::class_<PricePanel>(m, "PricePanel")
        .def(py::init<>())
        .def_readwrite("assets", &PricePanel::assets)
        .def_readwrite("days", &PricePanel::days)
        .def_readwrite("prices", &PricePanel::prices)
        .def("asset_count", &PricePanel::asset_count)
        .def("day_count", &PricePanel::day_count);

    py::class_<ReturnPanel>(m, "ReturnPanel")
        .def(py::init<>())
        .def_readwrite("assets", &ReturnPanel::assets)
        .def_readwrite("days", &ReturnPanel::days)
        .def_readwrite("returns", &ReturnPanel::returns)
        .def("asset_count", &ReturnPanel::asset_count)
        .def("day_count", &ReturnPanel::day_count);

    m.def("to_returns", &to_returns, py::arg("prices"));
    m.def("returns_to_prices", &returns_to_prices, py::arg("returns"));
    m.def("normalize_prices", &normalize_prices, py::arg("prices"));
    m.def("drop_closed_days", py::overload_cast<const ReturnPanel&>(&drop_closed_days),
          py::arg("returns"));
    m.def("drop_closed_days", py::overload_cast<const PricePanel&>(&drop_closed_days),
          py::arg("prices"));

    py::class_<CsvOptions>(m, "CsvOptions")
        .def(py::init<>())
        .def_readwrite("forward_fill", &CsvOptions::forward_fill);

    py::class_<LoadReport>(m, "LoadReport")
        .def(py::init<>())
        .def_readonly("rejected_assets", &LoadReport::rejected_assets)
        .def_readonly("filled_cells", &LoadReport::filled_cells);

    m.def(
        "load_price_csv",
        [](const std::filesystem::path& path, const CsvOptions& opt) {
            LoadReport rep;
            PricePanel p = load_price_csv(path, opt, &rep);
            return py::make_tuple(p, rep);
        },
        py::arg("path"), py::arg("options") = CsvOptions{});
    m.def("load_return_csv", &load_return_csv, py::arg("path"));
    m.def("save_price_csv", &save_price_csv, py::arg("path"), py::arg("panel"));
    m.def("save_return_csv", &save_return_csv, py::arg("path"), py::arg("panel"));

    // ---- rng -----------------------------------------------------------
    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static("substream", &RngStream::substream, py::arg("seed"), py::arg("ordinal"))
        .def("uniform", &RngStream::uniform)
        .def("normal", &RngStream::normal)
        .def("student_t", &RngStream::student_t, py::arg("nu"))
        .def("uniform_int", &RngStream::uniform_int, py::arg("n"));

    // ---- trends ----------------------------------------------------------
    py::enum_<TrendSign>(m, "TrendSign")
        .value("upward", TrendSign::upward)
        .value("downward", TrendSign::downward);

    py::class_<TrendSegment>(m, "TrendSegment")
        .def(py::init<>())
        .def_readonly("start", &TrendSegment::start)
        .def_readonly("end", &TrendSegment::end)
        .def_readonly("sign", &TrendSegment::sign)
        .def_readonly("theta", &TrendSegment::theta)
        .def_readonly("total_return", &TrendSegment::total_return)
        .def_readonly("confirmed", &TrendSegment::confirmed)
        .def("length", &TrendSegment::length)
        .def("__repr__", [](const TrendSegment& s) {
            return "TrendSegment([" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                   "), " + to_string(s.sign) + (s.confirmed ? "" : ", unconfirmed") + ")";
        });

    py::class_<IndexSeries>(m, "IndexSeries")
        .def_readonly("days", &IndexSeries::days)
        .def_readonly("values", &IndexSeries::values);

    m.def("equal_weight_index", &equal_weight_index, py::arg("returns"));
    m.def(
        "detect_trends",
        [](const std::vector<double>& series, double theta) {
            return detect_trends(series, theta);
        },
        py::arg("series"), py::arg("theta"));
    m.def("trend_ratio", &trend_ratio, py::arg("segment"));
    m.def("save_trend_csv", &save_trend_csv, py::arg("path"), py::arg("segments"));

    // ---- analysis --------------------------------------------------------
    py::class_<WindowParams>(m, "WindowParams")
        .def(py::init<>())
        .def_readwrite("mu", &WindowParams::mu)
        .def_readwrite("factor", &WindowParams::factor)
        .def_readwrite("window_len", &WindowParams::window_len)
        .def("asset_count", &WindowParams::asset_count);

    py::class_<AnalyzedTrend>(m, "AnalyzedTrend")
        .def_readonly("sign", &AnalyzedTrend::sign)
        .def_readonly("windows", &AnalyzedTrend::windows)
        .def_readonly("source", &AnalyzedTrend::source)
        .def("day_count", &AnalyzedTrend::day_count);

    py::class_<TrendLibrary>(m, "TrendLibrary")
        .def_readonly("assets", &TrendLibrary::assets)
        .def_readonly("theta", &TrendLibrary::theta)
        .def_readonly("window_len_L", &TrendLibrary::window_len_L)
        .def_readonly("trends", &TrendLibrary::trends)
        .def("asset_count", &TrendLibrary::asset_count);

    m.def("segment_windows", &segment_windows, py::arg("segment_len"), py::arg("L"));
    m.def("estimate_window_params", &estimate_window_params, py::arg("slice"));
    m.def("build_trend_library", &build_trend_library, py::arg("returns"), py::arg("theta"),
          py::arg("L"));
    m.def("save_trend_library", &save_trend_library, py::arg("path"), py::arg("library"));
    m.def("load_trend_library", &load_trend_library, py::arg("path"));

    // ---- synthesis -------------------------------------------------------
    py::enum_<FirstSign>(m, "FirstSign")
        .value("upward", FirstSign::upward)
        .value("downward", FirstSign::downward)
        .value("random", FirstSign::random);

    py::class_<TrendChoice>(m, "TrendChoice")
        .def_readonly("library_index", &TrendChoice::library_index)
        .def_readonly("sign", &TrendChoice::sign);

    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def(py::init<>())
        .def_readwrite("target_days", &ScenarioSpec::target_days)
        .def_readwrite("seed", &ScenarioSpec::seed)
        .def_readwrite("first_sign", &ScenarioSpec::first_sign)
        .def_readwrite("forced_sequence", &ScenarioSpec::forced_sequence);

    m.def("hypothesize_trend_sequence", &hypothesize_trend_sequence, py::arg("library"),
          py::arg("target_days"), py::arg("first_sign"), py::arg("rng"));
    m.def("sample_window", &sample_window, py::arg("params"), py::arg("rng"));
    m.def(
        "synthesize_scenario",
        [](const TrendLibrary& lib, const ScenarioSpec& spec) {
            return synthesize_scenario(lib, spec);
        },
        py::arg("library"), py::arg("spec"));

    // ---- expansion -------------------------------------------------------
    py::class_<LoadingMatrix>(m, "LoadingMatrix")
        .def_readonly("rows", &LoadingMatrix::rows)
        .def_readonly("orthonormal", &LoadingMatrix::orthonormal);

    py::class_<ComponentPanel>(m, "ComponentPanel")
        .def_readonly("y", &ComponentPanel::y)
        .def_readonly("eigenvalues", &ComponentPanel::eigenvalues);

    py::class_<LoadingDistribution>(m, "LoadingDistribution")
        .def_readonly("mean", &LoadingDistribution::mean)
        .def_readonly("factor", &LoadingDistribution::factor);

    py::class_<ExpandOptions>(m, "ExpandOptions")
        .def(py::init<>())
        .def_readwrite("ratio_cap", &ExpandOptions::ratio_cap)
        .def_readwrite("theta", &ExpandOptions::theta)
        .def_readwrite("max_redraw_rounds", &ExpandOptions::max_redraw_rounds)
        .def_readwrite("keep_originals", &ExpandOptions::keep_originals);

    py::class_<ExpandResult>(m, "ExpandResult")
        .def_readonly("panel", &ExpandResult::panel)
        .def_readonly("discarded", &ExpandResult::discarded)
        .def_readonly("redraw_rounds", &ExpandResult::redraw_rounds)
        .def_readonly("gave_up", &ExpandResult::gave_up);

    m.def(
        "pca_decompose",
        [](const ReturnPanel& r) {
            LoadingMatrix w;
            ComponentPanel y;
            pca_decompose(r, w, y);
            return py::make_tuple(w, y);
        },
        py::arg("returns"));
    m.def("fit_loading_distribution", &fit_loading_distribution, py::arg("loading_rows"));
    m.def("draw_loadings", &draw_loadings, py::arg("distribution"), py::arg("count"),
          py::arg("rng"));
    m.def("expand_assets", &expand_assets, py::arg("returns"), py::arg("extra"), py::arg("rng"),
          py::arg("options") = ExpandOptions{});

    // ---- metrics ---------------------------------------------------------
    py::class_<MetricsOptions>(m, "MetricsOptions")
        .def(py::init<>())
        .def_readwrite("theta", &MetricsOptions::theta)
        .def_readwrite("rolling_window", &MetricsOptions::rolling_window)
        .def_readwrite("rolling_step", &MetricsOptions::rolling_step)
        .def_readwrite("acf_lags_returns", &MetricsOptions::acf_lags_returns)
        .def_readwrite("acf_lags_abs", &MetricsOptions::acf_lags_abs)
        .def_readwrite("similarity_window", &MetricsOptions::similarity_window)
        .def_readwrite("similarity_step", &MetricsOptions::similarity_step)
        .def_readwrite("threads", &MetricsOptions::threads);

    py::class_<RollingPoint>(m, "RollingPoint")
        .def_readonly("t", &RollingPoint::t)
        .def_readonly("kurtosis", &RollingPoint::kurtosis)
        .def_readonly("skewness", &RollingPoint::skewness);

    py::class_<BoxSummary>(m, "BoxSummary")
        .def_readonly("min", &BoxSummary::min)
        .def_readonly("q1", &BoxSummary::q1)
        .def_readonly("median", &BoxSummary::median)
        .def_readonly("q3", &BoxSummary::q3)
        .def_readonly("max", &BoxSummary::max)
        .def_readonly("lo_whisker", &BoxSummary::lo_whisker)
        .def_readonly("hi_whisker", &BoxSummary::hi_whisker)
        .def_readonly("n", &BoxSummary::n)
        .def_readonly("n_outliers", &BoxSummary::n_outliers);

    py::class_<AssetMetrics>(m, "AssetMetrics")
        .def_readonly("asset", &AssetMetrics::asset)
        .def_readonly("kurtosis", &AssetMetrics::kurtosis)
        .def_readonly("skewness", &AssetMetrics::skewness)
        .def_readonly("avg_abs_acf_returns", &AssetMetrics::avg_abs_acf_returns)
        .def_readonly("avg_abs_acf_abs_returns", &AssetMetrics::avg_abs_acf_abs_returns)
        .def_readonly("trend_count", &AssetMetrics::trend_count)
        .def_readonly("trend_ratios", &AssetMetrics::trend_ratios)
        .def_readonly("rolling", &AssetMetrics::rolling)
        .def_readonly("acf_returns", &AssetMetrics::acf_returns)
        .def_readonly("acf_abs_returns", &AssetMetrics::acf_abs_returns);

    py::class_<IndexMetrics>(m, "IndexMetrics")
        .def_readonly("kurtosis", &IndexMetrics::kurtosis)
        .def_readonly("skewness", &IndexMetrics::skewness)
        .def_readonly("avg_abs_acf_returns", &IndexMetrics::avg_abs_acf_returns)
        .def_readonly("avg_abs_acf_abs_returns", &IndexMetrics::avg_abs_acf_abs_returns)
        .def_readonly("trend_count", &IndexMetrics::trend_count)
        .def_readonly("acf_returns", &IndexMetrics::acf_returns)
        .def_readonly("acf_abs_returns", &IndexMetrics::acf_abs_returns);

    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readonly("options", &MetricsReport::options)
        .def_readonly("asset_count", &MetricsReport::asset_count)
        .def_readonly("day_count", &MetricsReport::day_count)
        .def_readonly("assets", &MetricsReport::assets)
        .def_readonly("correlation", &MetricsReport::correlation)
        .def_readonly("similarity", &MetricsReport::similarity)
        .def_readonly("index", &MetricsReport::index)
        .def_readonly("kurtosis_box", &MetricsReport::kurtosis_box)
        .def_readonly("skewness_box", &MetricsReport::skewness_box)
        .def_readonly("avg_abs_acf_returns_box", &MetricsReport::avg_abs_acf_returns_box)
        .def_readonly("avg_abs_acf_abs_returns_box", &MetricsReport::avg_abs_acf_abs_returns_box)
        .def_readonly("trend_ratio_box", &MetricsReport::trend_ratio_box)
        .def_readonly("similarity_box", &MetricsReport::similarity_box);

    m.def(
        "kurtosis", [](const std::vector<double>& x) { return kurtosis(x); }, py::arg("series"));
    m.def(
        "skewness", [](const std::vector<double>& x) { return skewness(x); }, py::arg("series"));
    m.def(
        "rolling_moments",
        [](const std::vector<double>& x, Eigen::Index window, Eigen::Index step) {
            return rolling_moments(x, window, step);
        },
        py::arg("series"), py::arg("window") = 180, py::arg("step") = 5);
    m.def(
        "acf",
        [](const std::vector<double>& x, Eigen::Index max_lag) { return acf(x, max_lag); },
        py::arg("series"), py::arg("max_lag"));
    m.def(
        "avg_abs_acf",
        [](const std::vector<double>& x, Eigen::Index max_lag) { return avg_abs_acf(x, max_lag); },
        py::arg("series"), py::arg("max_lag"));
    m.def("acf_bound", &acf_bound, py::arg("t"));
    m.def("correlation_map", &correlation_map, py::arg("returns"), py::arg("start") = 0,
          py::arg("len") = -1);
    m.def("directional_similarity", &directional_similarity, py::arg("returns"),
          py::arg("window") = 50, py::arg("step") = 1);
    m.def("summarize_box", &summarize_box, py::arg("values"));
    m.def("panel_report", &panel_report, py::arg("returns"),
          py::arg("options") = MetricsOptions{});
    m.def("save_metrics_report", &save_metrics_report, py::arg("path"), py::arg("report"));
    m.def("load_metrics_report", &load_metrics_report, py::arg("path"));
    m.def("write_metrics_csvs", &write_metrics_csvs, py::arg("dir"), py::arg("report"));

    py::class_<CompareRow>(m, "CompareRow")
        .def_readonly("metric", &CompareRow::metric)
        .def_readonly("a_median", &CompareRow::a_median)
        .def_readonly("b_median", &CompareRow::b_median)
        .def_readonly("a_mean", &CompareRow::a_mean)
        .def_readonly("b_mean", &CompareRow::b_mean);

    py::class_<CompareReport>(m, "CompareReport")
        .def_readonly("rows", &CompareReport::rows)
        .def_readonly("correlation_mad", &CompareReport::correlation_mad)
        .def_readonly("similarity_mean_delta", &CompareReport::similarity_mean_delta);

    m.def("compare_reports", &compare_reports, py::arg("a"), py::arg("b"));
    m.def("save_compare_report", &save_compare_report, py::arg("path"), py::arg("report"));
    m.def("render_compare_table", &render_compare_table, py::arg("report"));

    // ---- baselines -------------------------------------------------------
    py::class_<GbmParams>(m, "GbmParams")
        .def(py::init<>())
        .def(py::init([](double mu, double sigma) {
                 return GbmParams{mu, sigma};
             }),
             py::arg("mu"), py::arg("sigma"))
        .def_readwrite("mu", &GbmParams::mu)
        .def_readwrite("sigma", &GbmParams::sigma);

    m.def(
        "fit_gbm", [](const std::vector<double>& x) { return fit_gbm(x); }, py::arg("returns"));
    m.def("simulate_gbm", &simulate_gbm, py::arg("params"), py::arg("t"), py::arg("rng"));

    py::enum_<Innovation>(m, "Innovation")
        .value("gaussian", Innovation::gaussian)
        .value("student_t", Innovation::student_t);

    py::class_<GarchParams>(m, "GarchParams")
        .def(py::init<>())
        .def_readwrite("omega", &GarchParams::omega)
        .def_readwrite("alpha", &GarchParams::alpha)
        .def_readwrite("beta", &GarchParams::beta)
        .def_readwrite("mean", &GarchParams::mean)
        .def_readwrite("innovation", &GarchParams::innovation)
        .def_readwrite("nu", &GarchParams::nu)
        .def("unconditional_variance", &GarchParams::unconditional_variance);

    py::class_<GarchFit>(m, "GarchFit")
        .def_readonly("params", &GarchFit::params)
        .def_readonly("log_likelihood", &GarchFit::log_likelihood)
        .def_readonly("iterations", &GarchFit::iterations)
        .def_readonly("converged", &GarchFit::converged);

    py::class_<GarchFitOptions>(m, "GarchFitOptions")
        .def(py::init<>())
        .def_readwrite("max_iterations", &GarchFitOptions::max_iterations)
        .def_readwrite("tol", &GarchFitOptions::tol);

    m.def(
        "fit_garch11",
        [](const std::vector<double>& x, Innovation innovation, const GarchFitOptions& opt) {
            return fit_garch11(x, innovation, opt);
        },
        py::arg("returns"), py::arg("innovation") = Innovation::gaussian,
        py::arg("options") = GarchFitOptions{});
    m.def("simulate_garch11", &simulate_garch11, py::arg("params"), py::arg("t"), py::arg("rng"));

    // ---- fixture ---------------------------------------------------------
    py::class_<FixtureOptions>(m, "FixtureOptions")
        .def(py::init<>())
        .def_readwrite("assets", &FixtureOptions::assets)
        .def_readwrite("days", &FixtureOptions::days)
        .def_readwrite("seed", &FixtureOptions::seed)
        .def_readwrite("dirty", &FixtureOptions::dirty);

    m.def("make_fixture", &make_fixture, py::arg("options") = FixtureOptions{});
    m.def("write_fixture_csv", &write_fixture_csv, py::arg("path"), py::arg("options"));
}
