#include "scengen/cli.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scengen/analysis.hpp"
#include "scengen/baselines.hpp"
#include "scengen/error.hpp"
#include "scengen/expand.hpp"
#include "scengen/fixture.hpp"
#include "scengen/manifest.hpp"
#include "scengen/metrics.hpp"
#include "scengen/panel_io.hpp"
#include "scengen/synthesis.hpp"

namespace scengen {

namespace {

namespace fs = std::filesystem;

fs::path ensure_dir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

struct IngestArgs {
    std::string prices;
    std::string out = ".";
    bool no_forward_fill = false;
    bool keep_closed_days = false;
};

// Shared by `ingest` and `pipeline`: clean a raw price CSV into
// prices_clean.csv + returns.csv.
void do_ingest(const IngestArgs& a) {
    const fs::path dir = ensure_dir(a.out);
    CsvOptions opt;
    opt.forward_fill = !a.no_forward_fill;
    LoadReport report;
    PricePanel panel = load_price_csv(a.prices, opt, &report);
    Eigen::Index dropped_days = 0;
    if (!a.keep_closed_days) {
        const Eigen::Index before = panel.day_count();
        panel = drop_closed_days(panel);
        dropped_days = before - panel.day_count();
    }
    ReturnPanel returns = to_returns(panel);

    save_price_csv(dir / "prices_clean.csv", panel);
    save_return_csv(dir / "returns.csv", returns);

    Manifest m;
    m.command = "ingest";
    m.set("prices", fs::path(a.prices).filename().string());
    m.set("forward_fill", std::string(opt.forward_fill ? "true" : "false"));
    m.set("keep_closed_days", std::string(a.keep_closed_days ? "true" : "false"));
    m.set("assets", static_cast<long long>(panel.asset_count()));
    m.set("days", static_cast<long long>(panel.day_count()));
    m.set("dropped_closed_days", static_cast<long long>(dropped_days));
    m.set("filled_cells", static_cast<long long>(report.filled_cells));
    std::string rejected;
    for (const auto& r : report.rejected_assets)
        rejected += (rejected.empty() ? "" : ",") + r;
    m.set("rejected_assets", rejected);
    m.add_input(a.prices);
    m.add_output(dir / "prices_clean.csv");
    m.add_output(dir / "returns.csv");
    m.save(dir / "manifest.json");

    if (!report.rejected_assets.empty())
        std::cerr << "ingest: rejected " << report.rejected_assets.size()
                  << " asset(s) with unusable leading data: " << rejected << "\n";
    std::cout << "ingest: " << panel.asset_count() << " assets, " << panel.day_count()
              << " days -> " << (dir / "returns.csv").string() << "\n";
}

struct AnalyzeArgs {
    std::string input; // returns CSV
    std::string prices; // alternative: raw price CSV (ingested in-process)
    std::string out = ".";
    double theta = 0.05;
    long long window = 20;
};

void do_analyze(const AnalyzeArgs& a) {
    const fs::path dir = ensure_dir(a.out);
    ReturnPanel returns;
    fs::path input_path;
    if (!a.input.empty()) {
        input_path = a.input;
        returns = load_return_csv(input_path);
    } else {
        input_path = a.prices;
        returns = to_returns(drop_closed_days(load_price_csv(input_path, {}, nullptr)));
    }

    TrendLibrary lib = build_trend_library(returns, a.theta, a.window);
    save_trend_library(dir / "library.json", lib);

    std::vector<TrendSegment> segs;
    segs.reserve(lib.trends.size());
    for (const auto& t : lib.trends) segs.push_back(t.source);
    save_trend_csv(dir / "trends.csv", segs);

    Eigen::Index up = 0, down = 0;
    for (const auto& t : lib.trends) (t.sign == TrendSign::upward ? up : down) += 1;

    Manifest m;
    m.command = "analyze";
    m.set("input", input_path.filename().string());
    m.set("theta", a.theta);
    m.set("L", a.window);
    m.set("assets", static_cast<long long>(returns.asset_count()));
    m.set("days", static_cast<long long>(returns.day_count()));
    m.set("trends_up", static_cast<long long>(up));
    m.set("trends_down", static_cast<long long>(down));
    m.add_input(input_path);
    m.add_output(dir / "library.json");
    m.add_output(dir / "trends.csv");
    m.save(dir / "manifest.json");

    std::cout << "analyze: " << lib.trends.size() << " trends (" << up << " up, " << down
              << " down) -> " << (dir / "library.json").string() << "\n";
}

struct SimulateArgs {
    std::string library;
    std::string out = ".";
    long long days = 12500;
    uint64_t seed = 1;
    std::string first_sign = "random";
    std::string sequence_file;
};

std::vector<Eigen::Index> read_sequence_file(const fs::path& path) {
    std::ifstream f(path);
    if (!f)
        throw DataError("cannot open: " + path.string());
    std::vector<Eigen::Index> seq;
    std::string tok;
    while (f >> tok) {
        for (auto& c : tok)
            if (c == ',')
                c = ' ';
        size_t pos = 0;
        while (pos < tok.size()) {
            while (pos < tok.size() && tok[pos] == ' ') ++pos;
            if (pos >= tok.size())
                break;
            size_t end = tok.find(' ', pos);
            if (end == std::string::npos)
                end = tok.size();
            long long v = 0;
            auto res = std::from_chars(tok.data() + pos, tok.data() + end, v);
            if (res.ec != std::errc() || res.ptr != tok.data() + end)
                throw ParseError("sequence file " + path.string() + ": bad trend index '" +
                                 tok.substr(pos, end - pos) + "'");
            seq.push_back(v);
            pos = end;
        }
    }
    if (seq.empty())
        throw DataError("sequence file " + path.string() + " lists no trends");
    return seq;
}

void do_simulate(const SimulateArgs& a) {
    const fs::path dir = ensure_dir(a.out);
    TrendLibrary lib = load_trend_library(a.library);

    ScenarioSpec spec;
    spec.target_days = a.days;
    spec.seed = a.seed;
    if (a.first_sign == "upward")
        spec.first_sign = FirstSign::upward;
    else if (a.first_sign == "downward")
        spec.first_sign = FirstSign::downward;
    else if (a.first_sign == "random")
        spec.first_sign = FirstSign::random;
    else
        throw std::invalid_argument("--first-sign must be upward, downward or random");
    if (!a.sequence_file.empty())
        spec.forced_sequence = read_sequence_file(a.sequence_file);

    TrendSequence seq;
    ReturnPanel scenario = synthesize_scenario(lib, spec, &seq);
    save_return_csv(dir / "scenario.csv", scenario);

    std::string seq_str;
    for (const auto& c : seq)
        seq_str += (seq_str.empty() ? "" : ",") + std::to_string(c.library_index);

    Manifest m;
    m.command = "simulate";
    m.set("library", fs::path(a.library).filename().string());
    m.set("target_days", a.days);
    m.set("seed", static_cast<long long>(a.seed));
    m.set("first_sign", a.first_sign);
    m.set("trend_sequence", seq_str);
    m.add_input(a.library);
    m.add_output(dir / "scenario.csv");
    m.save(dir / "manifest.json");

    std::cout << "simulate: " << scenario.asset_count() << "x" << scenario.day_count()
              << " scenario over " << seq.size() << " trends -> "
              << (dir / "scenario.csv").string() << "\n";
}

struct ExpandArgs {
    std::string input;
    std::string out = ".";
    long long extra = 0;
    uint64_t seed = 1;
    double ratio_cap = 12.0;
    double theta = 0.05;
    bool drop_originals = false;
};

void do_expand(const ExpandArgs& a) {
    const fs::path dir = ensure_dir(a.out);
    ReturnPanel input = load_return_csv(a.input);

    ExpandOptions opt;
    opt.ratio_cap = a.ratio_cap;
    opt.theta = a.theta;
    opt.keep_originals = !a.drop_originals;
    RngStream rng(a.seed);
    ExpandResult res = expand_assets(input, a.extra, rng, opt);
    save_return_csv(dir / "expanded.csv", res.panel);

    Manifest m;
    m.command = "expand";
    m.set("input", fs::path(a.input).filename().string());
    m.set("extra", a.extra);
    m.set("seed", static_cast<long long>(a.seed));
    m.set("ratio_cap", a.ratio_cap);
    m.set("theta", a.theta);
    m.set("drop_originals", std::string(a.drop_originals ? "true" : "false"));
    m.set("discarded_draws", static_cast<long long>(res.discarded));
    m.set("redraw_rounds", static_cast<long long>(res.redraw_rounds));
    m.add_input(a.input);
    m.add_output(dir / "expanded.csv");
    m.save(dir / "manifest.json");

    if (res.gave_up)
        std::cerr << "expand: redraw budget exhausted; kept asset(s) above the ratio cap\n";
    else if (res.discarded > 0)
        std::cerr << "expand: discarded " << res.discarded << " outlier draw(s) over "
                  << res.redraw_rounds << " redraw round(s)\n";
    std::cout << "expand: " << res.panel.asset_count() << "x" << res.panel.day_count() << " -> "
              << (dir / "expanded.csv").string() << "\n";
}

struct ValidateArgs {
    std::string input;
    std::string prices;
    std::string out = ".";
    MetricsOptions metrics;
    long long threads = 1;
};

void do_validate(const ValidateArgs& a) {
    const fs::path dir = ensure_dir(a.out);
    ReturnPanel returns;
    fs::path input_path;
    if (!a.input.empty()) {
        input_path = a.input;
        returns = load_return_csv(input_path);
    } else {
        input_path = a.prices;
        returns = to_returns(drop_closed_days(load_price_csv(input_path, {}, nullptr)));
    }

    MetricsOptions opt = a.metrics;
    opt.threads = static_cast<int>(a.threads);
    MetricsReport report = panel_report(returns, opt);
    save_metrics_report(dir / "report.json", report);
    std::vector<std::string> files = write_metrics_csvs(dir, report);

    Manifest m;
    m.command = "validate";
    m.set("input", input_path.filename().string());
    m.set("theta", opt.theta);
    m.set("rolling_window", static_cast<long long>(opt.rolling_window));
    m.set("rolling_step", static_cast<long long>(opt.rolling_step));
    m.set("acf_lags_returns", static_cast<long long>(opt.acf_lags_returns));
    m.set("acf_lags_abs", static_cast<long long>(opt.acf_lags_abs));
    m.set("similarity_window", static_cast<long long>(opt.similarity_window));
    m.set("similarity_step", static_cast<long long>(opt.similarity_step));
    m.add_input(input_path);
    m.add_output(dir / "report.json");
    for (const auto& f : files) m.add_output(dir / f);
    m.save(dir / "manifest.json");

    std::cout << "validate: " << returns.asset_count() << " assets, kurtosis median "
              << report.kurtosis_box.median << ", abs-acf median "
              << report.avg_abs_acf_abs_returns_box.median << " -> "
              << (dir / "report.json").string() << "\n";
}

struct CompareArgs {
    std::string a;
    std::string b;
    std::string out = ".";
};

void do_compare(const CompareArgs& args) {
    const fs::path dir = ensure_dir(args.out);
    MetricsReport ra = load_metrics_report(args.a);
    MetricsReport rb = load_metrics_report(args.b);
    CompareReport rep = compare_reports(ra, rb);
    save_compare_report(dir / "compare.json", rep);

    Manifest m;
    m.command = "compare";
    m.set("a", fs::path(args.a).filename().string());
    m.set("b", fs::path(args.b).filename().string());
    m.add_input(args.a);
    m.add_input(args.b);
    m.add_output(dir / "compare.json");
    m.save(dir / "manifest.json");

    std::cout << render_compare_table(rep);
}

struct BaselineArgs {
    std::string model = "gbm";
    std::string fit_csv;
    std::string asset;
    std::string out = ".";
    long long days = 4108;
    uint64_t seed = 1;
};

void do_baseline(const BaselineArgs& a) {
    const fs::path dir = ensure_dir(a.out);
    ReturnPanel input = load_return_csv(a.fit_csv);

    Eigen::Index col = 0;
    if (!a.asset.empty()) {
        col = -1;
        for (Eigen::Index i = 0; i < input.asset_count(); ++i)
            if (input.assets[static_cast<size_t>(i)] == a.asset) {
                col = i;
                break;
            }
        if (col < 0)
            throw DataError("asset '" + a.asset + "' not found in " + a.fit_csv);
    }
    std::vector<double> series(static_cast<size_t>(input.day_count()));
    for (Eigen::Index t = 0; t < input.day_count(); ++t)
        series[static_cast<size_t>(t)] = input.returns(col, t);

    nlohmann::json params;
    std::vector<double> simulated;
    RngStream rng(a.seed);
    if (a.model == "gbm") {
        GbmParams p = fit_gbm(series);
        simulated = simulate_gbm(p, a.days, rng);
        params = {{"model", "gbm"}, {"mu", p.mu}, {"sigma", p.sigma}};
    } else if (a.model == "garch-gaussian" || a.model == "garch-t") {
        const Innovation innov =
            a.model == "garch-t" ? Innovation::student_t : Innovation::gaussian;
        if (input.day_count() < 100)
            std::cerr << "baseline: fitting GARCH on fewer than 100 observations is unreliable\n";
        GarchFit fit = fit_garch11(series, innov);
        simulated = simulate_garch11(fit.params, a.days, rng);
        params = {{"model", a.model},
                  {"omega", fit.params.omega},
                  {"alpha", fit.params.alpha},
                  {"beta", fit.params.beta},
                  {"mean", fit.params.mean},
                  {"log_likelihood", fit.log_likelihood},
                  {"iterations", fit.iterations}};
        if (innov == Innovation::student_t)
            params["nu"] = fit.params.nu;
    } else {
        throw std::invalid_argument("--model must be gbm, garch-gaussian or garch-t");
    }

    ReturnPanel sim;
    sim.assets = {a.model};
    sim.days.reserve(simulated.size());
    for (size_t t = 0; t < simulated.size(); ++t) sim.days.push_back("d" + std::to_string(t + 1));
    sim.returns.resize(1, static_cast<Eigen::Index>(simulated.size()));
    for (size_t t = 0; t < simulated.size(); ++t)
        sim.returns(0, static_cast<Eigen::Index>(t)) = simulated[t];
    save_return_csv(dir / "baseline_returns.csv", sim);

    std::ofstream pf(dir / "params.json", std::ios::binary);
    if (!pf)
        throw DataError("cannot open for writing: " + (dir / "params.json").string());
    pf << params.dump(2) << '\n';
    pf.close();

    Manifest m;
    m.command = "baseline";
    m.set("model", a.model);
    m.set("fit", fs::path(a.fit_csv).filename().string());
    m.set("asset", a.asset.empty() ? input.assets.front() : a.asset);
    m.set("days", a.days);
    m.set("seed", static_cast<long long>(a.seed));
    m.add_input(a.fit_csv);
    m.add_output(dir / "baseline_returns.csv");
    m.add_output(dir / "params.json");
    m.save(dir / "manifest.json");

    std::cout << "baseline: " << a.model << " fitted on "
              << (a.asset.empty() ? input.assets.front() : a.asset) << ", simulated " << a.days
              << " days -> " << (dir / "baseline_returns.csv").string() << "\n";
}

struct FixtureArgs {
    long long assets = 50;
    long long days = 2000;
    uint64_t seed = 42;
    bool dirty = false;
    std::string out = ".";
};

void do_make_fixture(const FixtureArgs& a) {
    const fs::path dir = ensure_dir(a.out);
    FixtureOptions opt;
    opt.assets = a.assets;
    opt.days = a.days;
    opt.seed = a.seed;
    opt.dirty = a.dirty;
    write_fixture_csv(dir / "fixture_prices.csv", opt);

    Manifest m;
    m.command = "make-fixture";
    m.set("assets", a.assets);
    m.set("days", a.days);
    m.set("seed", static_cast<long long>(a.seed));
    m.set("dirty", std::string(a.dirty ? "true" : "false"));
    m.add_output(dir / "fixture_prices.csv");
    m.save(dir / "manifest.json");

    std::cout << "make-fixture: " << a.assets << "x" << a.days << " -> "
              << (dir / "fixture_prices.csv").string() << "\n";
}

struct PipelineArgs {
    std::string prices;
    std::string out = ".";
    double theta = 0.05;
    long long window = 20;
    long long days = 12500;
    long long extra = 0;
    uint64_t seed = 1;
    double ratio_cap = 12.0;
    long long threads = 1;
};

void do_pipeline(const PipelineArgs& a) {
    const fs::path dir = ensure_dir(a.out);

    IngestArgs ingest;
    ingest.prices = a.prices;
    ingest.out = (dir / "01_ingest").string();
    do_ingest(ingest);

    AnalyzeArgs analyze;
    analyze.input = (dir / "01_ingest" / "returns.csv").string();
    analyze.out = (dir / "02_analyze").string();
    analyze.theta = a.theta;
    analyze.window = a.window;
    do_analyze(analyze);

    SimulateArgs simulate;
    simulate.library = (dir / "02_analyze" / "library.json").string();
    simulate.out = (dir / "03_simulate").string();
    simulate.days = a.days;
    simulate.seed = a.seed;
    do_simulate(simulate);

    ExpandArgs expand;
    expand.input = (dir / "03_simulate" / "scenario.csv").string();
    expand.out = (dir / "04_expand").string();
    expand.extra = a.extra;
    expand.seed = a.seed + 1;
    expand.ratio_cap = a.ratio_cap;
    expand.theta = a.theta;
    do_expand(expand);

    ValidateArgs validate;
    validate.input = (dir / "04_expand" / "expanded.csv").string();
    validate.out = (dir / "05_validate").string();
    validate.metrics.theta = a.theta;
    validate.threads = a.threads;
    do_validate(validate);

    Manifest m;
    m.command = "pipeline";
    m.set("prices", fs::path(a.prices).filename().string());
    m.set("theta", a.theta);
    m.set("L", a.window);
    m.set("target_days", a.days);
    m.set("extra", a.extra);
    m.set("seed", static_cast<long long>(a.seed));
    m.set("ratio_cap", a.ratio_cap);
    m.add_input(a.prices);
    for (const char* f : {"01_ingest/returns.csv", "02_analyze/library.json",
                          "03_simulate/scenario.csv", "04_expand/expanded.csv",
                          "05_validate/report.json"})
        m.outputs[f] = sha256_file(dir / f);
    m.save(dir / "manifest.json");

    std::cout << "pipeline: complete -> " << dir.string() << "\n";
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Virtual-scenario generator for multivariate asset returns"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value config file; flags override");

    IngestArgs ingest;
    auto* c_ingest = app.add_subcommand("ingest", "Clean a raw price CSV into prices + returns");
    c_ingest->add_option("--prices", ingest.prices, "Raw price CSV")->required();
    c_ingest->add_option("--out", ingest.out, "Output directory");
    c_ingest->add_flag("--no-forward-fill", ingest.no_forward_fill,
                       "Fail on interior gaps instead of forward-filling");
    c_ingest->add_flag("--keep-closed-days", ingest.keep_closed_days,
                       "Keep days where no price moved");

    AnalyzeArgs analyze;
    auto* c_analyze = app.add_subcommand("analyze", "Build a trend library from a return panel");
    auto* an_in = c_analyze->add_option("--input", analyze.input, "Return CSV");
    auto* an_pr = c_analyze->add_option("--prices", analyze.prices, "Raw price CSV (ingested first)");
    an_in->excludes(an_pr);
    c_analyze->add_option("--theta", analyze.theta, "Trend reversal threshold")
        ->check(CLI::PositiveNumber);
    c_analyze->add_option("--L,--window", analyze.window, "Analysis window length (days)")
        ->check(CLI::Range(2LL, 100000LL));
    c_analyze->add_option("--out", analyze.out, "Output directory");

    SimulateArgs simulate;
    auto* c_simulate = app.add_subcommand("simulate", "Synthesize a scenario from a trend library");
    c_simulate->add_option("--library", simulate.library, "Trend library JSON")->required();
    c_simulate->add_option("--days", simulate.days, "Target scenario length")
        ->check(CLI::PositiveNumber);
    c_simulate->add_option("--seed", simulate.seed, "RNG seed");
    c_simulate->add_option("--first-sign", simulate.first_sign,
                           "First trend sign: upward|downward|random");
    c_simulate->add_option("--sequence", simulate.sequence_file,
                           "Explicit trend-index sequence file (overrides hypothesizing)");
    c_simulate->add_option("--out", simulate.out, "Output directory");

    ExpandArgs expand;
    auto* c_expand = app.add_subcommand("expand", "Add PCA-resampled artificial assets");
    c_expand->add_option("--input", expand.input, "Return CSV")->required();
    c_expand->add_option("--extra", expand.extra, "Number of artificial assets")
        ->check(CLI::NonNegativeNumber);
    c_expand->add_option("--seed", expand.seed, "RNG seed");
    c_expand->add_option("--ratio-cap", expand.ratio_cap, "Discard draws with a trend ratio above this")
        ->check(CLI::PositiveNumber);
    c_expand->add_option("--theta", expand.theta, "Threshold for the outlier screen")
        ->check(CLI::PositiveNumber);
    c_expand->add_flag("--drop-originals", expand.drop_originals,
                       "Emit only the artificial assets");
    c_expand->add_option("--out", expand.out, "Output directory");

    ValidateArgs validate;
    auto* c_validate = app.add_subcommand("validate", "Compute the stylized-facts report");
    auto* va_in = c_validate->add_option("--input", validate.input, "Return CSV");
    auto* va_pr = c_validate->add_option("--prices", validate.prices, "Raw price CSV");
    va_in->excludes(va_pr);
    c_validate->add_option("--theta", validate.metrics.theta, "Trend threshold")
        ->check(CLI::PositiveNumber);
    c_validate->add_option("--rolling-window", validate.metrics.rolling_window, "")
        ->check(CLI::Range(4LL, 1000000LL));
    c_validate->add_option("--rolling-step", validate.metrics.rolling_step, "")
        ->check(CLI::PositiveNumber);
    c_validate->add_option("--acf-lags", validate.metrics.acf_lags_returns, "")
        ->check(CLI::PositiveNumber);
    c_validate->add_option("--acf-abs-lags", validate.metrics.acf_lags_abs, "")
        ->check(CLI::PositiveNumber);
    c_validate->add_option("--similarity-window", validate.metrics.similarity_window, "")
        ->check(CLI::PositiveNumber);
    c_validate->add_option("--similarity-step", validate.metrics.similarity_step, "")
        ->check(CLI::PositiveNumber);
    c_validate->add_option("--threads", validate.threads, "Worker threads for per-asset metrics")
        ->check(CLI::Range(1LL, 256LL));
    c_validate->add_option("--out", validate.out, "Output directory");

    CompareArgs compare;
    auto* c_compare = app.add_subcommand("compare", "Diff two metrics reports");
    c_compare->add_option("--a", compare.a, "First report.json")->required();
    c_compare->add_option("--b", compare.b, "Second report.json")->required();
    c_compare->add_option("--out", compare.out, "Output directory");

    BaselineArgs baseline;
    auto* c_baseline = app.add_subcommand("baseline", "Fit and simulate a GBM/GARCH baseline");
    c_baseline->add_option("--model", baseline.model, "gbm|garch-gaussian|garch-t");
    c_baseline->add_option("--fit", baseline.fit_csv, "Return CSV to fit on")->required();
    c_baseline->add_option("--asset", baseline.asset, "Asset id (default: first column)");
    c_baseline->add_option("--days", baseline.days, "Simulated length")
        ->check(CLI::PositiveNumber);
    c_baseline->add_option("--seed", baseline.seed, "RNG seed");
    c_baseline->add_option("--out", baseline.out, "Output directory");

    FixtureArgs fixture;
    auto* c_fixture = app.add_subcommand("make-fixture", "Generate a synthetic reference market");
    c_fixture->add_option("--assets", fixture.assets, "Asset count")->check(CLI::PositiveNumber);
    c_fixture->add_option("--days", fixture.days, "Return-day count")
        ->check(CLI::PositiveNumber);
    c_fixture->add_option("--seed", fixture.seed, "RNG seed");
    c_fixture->add_flag("--dirty", fixture.dirty, "Inject gaps, holidays and a reject asset");
    c_fixture->add_option("--out", fixture.out, "Output directory");

    PipelineArgs pipeline;
    auto* c_pipeline =
        app.add_subcommand("pipeline", "ingest -> analyze -> simulate -> expand -> validate");
    c_pipeline->add_option("--prices", pipeline.prices, "Raw price CSV")->required();
    c_pipeline->add_option("--theta", pipeline.theta, "Trend threshold")
        ->check(CLI::PositiveNumber);
    c_pipeline->add_option("--L,--window", pipeline.window, "Analysis window length")
        ->check(CLI::Range(2LL, 100000LL));
    c_pipeline->add_option("--days", pipeline.days, "Scenario length")
        ->check(CLI::PositiveNumber);
    c_pipeline->add_option("--extra", pipeline.extra, "Artificial assets to add")
        ->check(CLI::NonNegativeNumber);
    c_pipeline->add_option("--seed", pipeline.seed, "RNG seed");
    c_pipeline->add_option("--ratio-cap", pipeline.ratio_cap, "Expansion outlier cap")
        ->check(CLI::PositiveNumber);
    c_pipeline->add_option("--threads", pipeline.threads, "Worker threads for validation")
        ->check(CLI::Range(1LL, 256LL));
    c_pipeline->add_option("--out", pipeline.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_ingest->parsed()) {
            do_ingest(ingest);
        } else if (c_analyze->parsed()) {
            if (analyze.input.empty() && analyze.prices.empty())
                throw std::invalid_argument("analyze: provide --input or --prices");
            do_analyze(analyze);
        } else if (c_simulate->parsed()) {
            do_simulate(simulate);
        } else if (c_expand->parsed()) {
            do_expand(expand);
        } else if (c_validate->parsed()) {
            if (validate.input.empty() && validate.prices.empty())
                throw std::invalid_argument("validate: provide --input or --prices");
            do_validate(validate);
        } else if (c_compare->parsed()) {
            do_compare(compare);
        } else if (c_baseline->parsed()) {
            do_baseline(baseline);
        } else if (c_fixture->parsed()) {
            do_make_fixture(fixture);
        } else if (c_pipeline->parsed()) {
            do_pipeline(pipeline);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const GarchFitError& e) {
        std::cerr << "error: " << e.what() << " (best log-likelihood " << e.best.log_likelihood
                  << ")\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace scengen
