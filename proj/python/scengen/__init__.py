"""Trend-segmented market scenario generation.

Thin wrapper over the compiled core: panels cross the boundary as numpy
arrays, seeds make every operation reproducible bit for bit.
"""

from scengen._core import (  # noqa: F401
    AnalyzedTrend,
    AssetMetrics,
    BoxSummary,
    CompareReport,
    CompareRow,
    ComponentPanel,
    CsvOptions,
    DataError,
    ExpandOptions,
    ExpandResult,
    FirstSign,
    FixtureOptions,
    GarchFit,
    GarchFitError,
    GarchFitOptions,
    GarchParams,
    GbmParams,
    IndexMetrics,
    IndexSeries,
    Innovation,
    LoadReport,
    LoadingDistribution,
    LoadingMatrix,
    MetricsOptions,
    MetricsReport,
    ParseError,
    PricePanel,
    ReturnPanel,
    RngStream,
    RollingPoint,
    ScenarioSpec,
    TrendChoice,
    TrendLibrary,
    TrendSegment,
    TrendSign,
    WindowParams,
    acf,
    acf_bound,
    avg_abs_acf,
    build_trend_library,
    compare_reports,
    correlation_map,
    detect_trends,
    directional_similarity,
    draw_loadings,
    drop_closed_days,
    equal_weight_index,
    estimate_window_params,
    expand_assets,
    fit_garch11,
    fit_gbm,
    fit_loading_distribution,
    hypothesize_trend_sequence,
    kurtosis,
    load_metrics_report,
    load_price_csv,
    load_return_csv,
    load_trend_library,
    make_fixture,
    normalize_prices,
    panel_report,
    pca_decompose,
    render_compare_table,
    returns_to_prices,
    rolling_moments,
    sample_window,
    save_compare_report,
    save_metrics_report,
    save_price_csv,
    save_return_csv,
    save_trend_csv,
    save_trend_library,
    segment_windows,
    simulate_garch11,
    simulate_gbm,
    skewness,
    summarize_box,
    synthesize_scenario,
    to_returns,
    trend_ratio,
    write_fixture_csv,
    write_metrics_csvs,
)

__version__ = "0.1.0"
