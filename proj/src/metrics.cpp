#include "scengen/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "scengen/error.hpp"
#include "scengen/trends.hpp"

namespace scengen {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Exact constancy test: a constant series has zero variance even when
// centering leaves rounding dust behind.
bool is_constant(std::span<const double> x) {
    for (double v : x)
        if (v != x[0]) return false;
    return true;
}

struct Moments {
    double mean = 0, m2 = 0, m3 = 0, m4 = 0;
};

Moments central_moments(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    Moments m;
    for (double v : x) m.mean += v;
    m.mean /= n;
    for (double v : x) {
        const double d = v - m.mean;
        const double d2 = d * d;
        m.m2 += d2;
        m.m3 += d2 * d;
        m.m4 += d2 * d2;
    }
    m.m2 /= n;
    m.m3 /= n;
    m.m4 /= n;
    return m;
}

} // namespace

double kurtosis(std::span<const double> series) {
    if (series.size() < 4)
        throw std::invalid_argument("kurtosis: need at least 4 observations");
    if (is_constant(series))
        throw DataError("kurtosis: degenerate series");
    Moments m = central_moments(series);
    if (m.m2 <= 0.0)
        throw DataError("kurtosis: degenerate series");
    return m.m4 / (m.m2 * m.m2);
}

double skewness(std::span<const double> series) {
    if (series.size() < 4)
        throw std::invalid_argument("skewness: need at least 4 observations");
    if (is_constant(series))
        throw DataError("skewness: degenerate series");
    Moments m = central_moments(series);
    if (m.m2 <= 0.0)
        throw DataError("skewness: degenerate series");
    return m.m3 / std::pow(m.m2, 1.5);
}

std::vector<RollingPoint> rolling_moments(std::span<const double> series, Eigen::Index window,
                                          Eigen::Index step) {
    if (window < 4)
        throw std::invalid_argument("rolling_moments: window must be >= 4");
    if (step < 1)
        throw std::invalid_argument("rolling_moments: step must be >= 1");
    if (static_cast<Eigen::Index>(series.size()) < window)
        throw std::invalid_argument("rolling_moments: series shorter than window");
    std::vector<RollingPoint> out;
    for (Eigen::Index t = 0; t + window <= static_cast<Eigen::Index>(series.size()); t += step) {
        auto slice = series.subspan(static_cast<size_t>(t), static_cast<size_t>(window));
        Moments m = central_moments(slice);
        if (!is_constant(slice) && m.m2 > 0.0)
            out.push_back({t, m.m4 / (m.m2 * m.m2), m.m3 / std::pow(m.m2, 1.5)});
        else
            out.push_back({t, kNaN, kNaN});
    }
    return out;
}

std::vector<double> acf(std::span<const double> series, Eigen::Index max_lag) {
    const Eigen::Index n = static_cast<Eigen::Index>(series.size());
    if (max_lag < 1)
        throw std::invalid_argument("acf: max_lag must be >= 1");
    if (n <= max_lag)
        throw std::invalid_argument("acf: series length must exceed max_lag");
    double mean = 0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double denom = 0;
    for (double v : series) denom += (v - mean) * (v - mean);
    denom /= static_cast<double>(n);
    if (denom <= 0.0)
        throw DataError("acf: degenerate series");
    std::vector<double> out(static_cast<size_t>(max_lag));
    for (Eigen::Index k = 1; k <= max_lag; ++k) {
        double num = 0;
        for (Eigen::Index t = 0; t + k < n; ++t)
            num += (series[static_cast<size_t>(t)] - mean) *
                   (series[static_cast<size_t>(t + k)] - mean);
        num /= static_cast<double>(n - k);
        out[static_cast<size_t>(k - 1)] = num / denom;
    }
    return out;
}

double avg_abs_acf(std::span<const double> series, Eigen::Index max_lag) {
    auto values = acf(series, max_lag);
    double s = 0;
    for (double v : values) s += std::abs(v);
    return s / static_cast<double>(values.size());
}

double acf_bound(Eigen::Index t) {
    if (t < 1)
        throw std::invalid_argument("acf_bound: T must be >= 1");
    return 2.0 / std::sqrt(static_cast<double>(t));
}

Eigen::MatrixXd correlation_map(const ReturnPanel& r, Eigen::Index start, Eigen::Index len) {
    const Eigen::Index s = r.returns.rows();
    const Eigen::Index t = r.returns.cols();
    if (len < 0)
        len = t - start;
    if (start < 0 || len < 3 || start + len > t)
        throw std::invalid_argument("correlation_map: interval must lie in the panel and span >= 3 days");

    Eigen::MatrixXd slice = r.returns.middleCols(start, len);
    std::vector<bool> degenerate(static_cast<size_t>(s));
    for (Eigen::Index i = 0; i < s; ++i)
        degenerate[static_cast<size_t>(i)] =
            slice.row(i).maxCoeff() == slice.row(i).minCoeff();
    Eigen::VectorXd mean = slice.rowwise().mean();
    slice.colwise() -= mean;
    Eigen::VectorXd norm = slice.rowwise().norm();

    Eigen::MatrixXd corr = slice * slice.transpose();
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = 0; j < s; ++j) {
            const bool ok = !degenerate[static_cast<size_t>(i)] &&
                            !degenerate[static_cast<size_t>(j)] && norm[i] > 0.0 &&
                            norm[j] > 0.0;
            if (i == j) {
                corr(i, j) = 1.0;
            } else if (ok) {
                corr(i, j) /= norm[i] * norm[j];
            } else {
                corr(i, j) = kNaN;
            }
        }
    }
    return corr;
}

std::vector<double> directional_similarity(const ReturnPanel& r, Eigen::Index window,
                                           Eigen::Index step) {
    if (window < 1 || step < 1)
        throw std::invalid_argument("directional_similarity: window and step must be >= 1");
    const Eigen::Index s = r.returns.rows();
    const Eigen::Index t = r.returns.cols();

    IndexSeries index = equal_weight_index(r);
    // Trailing 50-day moving average of the index (shorter at the start).
    const Eigen::Index ma = 50;
    std::vector<double> smoothed(index.values.size());
    double acc = 0;
    for (size_t i = 0; i < index.values.size(); ++i) {
        acc += index.values[i];
        if (i >= static_cast<size_t>(ma))
            acc -= index.values[i - static_cast<size_t>(ma)];
        smoothed[i] = acc / static_cast<double>(std::min<size_t>(i + 1, static_cast<size_t>(ma)));
    }

    Eigen::MatrixXd prices(s, t + 1);
    prices.col(0).setOnes();
    for (Eigen::Index d = 0; d < t; ++d)
        prices.col(d + 1) = prices.col(d).cwiseProduct(Eigen::VectorXd::Ones(s) + r.returns.col(d));

    std::vector<double> out;
    for (Eigen::Index pos = 0; pos + window <= t; pos += step) {
        const double market = smoothed[static_cast<size_t>(pos + window)] -
                              smoothed[static_cast<size_t>(pos)];
        const int mdir = market > 0 ? 1 : (market < 0 ? -1 : 0);
        Eigen::Index match = 0;
        if (mdir != 0) {
            for (Eigen::Index a = 0; a < s; ++a) {
                const double move = prices(a, pos + window) - prices(a, pos);
                const int adir = move > 0 ? 1 : (move < 0 ? -1 : 0);
                if (adir == mdir)
                    ++match;
            }
        }
        out.push_back(static_cast<double>(match) / static_cast<double>(s));
    }
    return out;
}

BoxSummary summarize_box(std::vector<double> values) {
    values.erase(std::remove_if(values.begin(), values.end(),
                                [](double v) { return std::isnan(v); }),
                 values.end());
    BoxSummary b;
    b.n = static_cast<Eigen::Index>(values.size());
    if (values.empty()) {
        b.min = b.q1 = b.median = b.q3 = b.max = b.lo_whisker = b.hi_whisker = kNaN;
        return b;
    }
    std::sort(values.begin(), values.end());
    auto quantile = [&](double p) {
        const double h = static_cast<double>(values.size() - 1) * p;
        const size_t lo = static_cast<size_t>(h);
        const double frac = h - static_cast<double>(lo);
        if (lo + 1 >= values.size())
            return values.back();
        return values[lo] + frac * (values[lo + 1] - values[lo]);
    };
    b.min = values.front();
    b.max = values.back();
    b.q1 = quantile(0.25);
    b.median = quantile(0.5);
    b.q3 = quantile(0.75);
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr;
    const double hi_fence = b.q3 + 1.5 * iqr;
    b.lo_whisker = b.max;
    b.hi_whisker = b.min;
    for (double v : values) {
        if (v >= lo_fence && v < b.lo_whisker)
            b.lo_whisker = v;
        if (v <= hi_fence && v > b.hi_whisker)
            b.hi_whisker = v;
        if (v < lo_fence || v > hi_fence)
            ++b.n_outliers;
    }
    return b;
}

namespace {

std::vector<double> row_vector(const ReturnPanel& r, Eigen::Index i) {
    std::vector<double> x(static_cast<size_t>(r.returns.cols()));
    for (Eigen::Index t = 0; t < r.returns.cols(); ++t)
        x[static_cast<size_t>(t)] = r.returns(i, t);
    return x;
}

// NaN-tolerant moment/ACF pack used for both assets and the index.
template <typename M>
void fill_series_metrics(M& m, const std::vector<double>& x, const MetricsOptions& opt) {
    const Eigen::Index n = static_cast<Eigen::Index>(x.size());
    try {
        m.kurtosis = kurtosis(x);
        m.skewness = skewness(x);
    } catch (const std::exception&) {
        m.kurtosis = m.skewness = kNaN;
    }
    try {
        if (n > opt.acf_lags_returns) {
            m.acf_returns = acf(x, opt.acf_lags_returns);
            double s = 0;
            for (double v : m.acf_returns) s += std::abs(v);
            m.avg_abs_acf_returns = s / static_cast<double>(m.acf_returns.size());
        } else {
            m.avg_abs_acf_returns = kNaN;
        }
    } catch (const std::exception&) {
        m.acf_returns.clear();
        m.avg_abs_acf_returns = kNaN;
    }
    try {
        if (n > opt.acf_lags_abs) {
            std::vector<double> ax(x.size());
            for (size_t i = 0; i < x.size(); ++i) ax[i] = std::abs(x[i]);
            m.acf_abs_returns = acf(ax, opt.acf_lags_abs);
            double s = 0;
            for (double v : m.acf_abs_returns) s += std::abs(v);
            m.avg_abs_acf_abs_returns = s / static_cast<double>(m.acf_abs_returns.size());
        } else {
            m.avg_abs_acf_abs_returns = kNaN;
        }
    } catch (const std::exception&) {
        m.acf_abs_returns.clear();
        m.avg_abs_acf_abs_returns = kNaN;
    }
}

std::vector<double> prices_from_returns(const std::vector<double>& x) {
    std::vector<double> p(x.size() + 1);
    p[0] = 1.0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > -1.0) || !std::isfinite(x[i]))
            throw DataError("return <= -1");
        p[i + 1] = p[i] * (1.0 + x[i]);
    }
    return p;
}

} // namespace

MetricsReport panel_report(const ReturnPanel& r, const MetricsOptions& opt) {
    if (r.returns.rows() < 1 || r.returns.cols() < 1)
        throw std::invalid_argument("panel_report: empty panel");
    MetricsReport rep;
    rep.options = opt;
    rep.asset_count = r.returns.rows();
    rep.day_count = r.returns.cols();

    const Eigen::Index s = r.returns.rows();
    rep.assets.resize(static_cast<size_t>(s));
    auto compute_asset = [&](Eigen::Index i) {
        AssetMetrics& am = rep.assets[static_cast<size_t>(i)];
        am.asset = static_cast<size_t>(i) < r.assets.size() ? r.assets[static_cast<size_t>(i)]
                                                            : "asset" + std::to_string(i);
        std::vector<double> x = row_vector(r, i);
        fill_series_metrics(am, x, opt);
        if (static_cast<Eigen::Index>(x.size()) >= opt.rolling_window) {
            am.rolling = rolling_moments(x, opt.rolling_window, opt.rolling_step);
        }
        try {
            auto segs = detect_trends(prices_from_returns(x), opt.theta);
            am.trend_count = static_cast<Eigen::Index>(segs.size());
            am.trend_ratios.reserve(segs.size());
            for (const auto& seg : segs) am.trend_ratios.push_back(trend_ratio(seg));
        } catch (const std::exception&) {
            am.trend_count = -1;
        }
    };
    const int workers = std::max(1, std::min<int>(opt.threads, static_cast<int>(s)));
    if (workers == 1) {
        for (Eigen::Index i = 0; i < s; ++i) compute_asset(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<Eigen::Index> next{0};
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (Eigen::Index i = next.fetch_add(1); i < s; i = next.fetch_add(1))
                    compute_asset(i);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<double> kurts, skews, acf_rets, acf_abss, pooled_ratios;
    for (const auto& am : rep.assets) {
        kurts.push_back(am.kurtosis);
        skews.push_back(am.skewness);
        acf_rets.push_back(am.avg_abs_acf_returns);
        acf_abss.push_back(am.avg_abs_acf_abs_returns);
        pooled_ratios.insert(pooled_ratios.end(), am.trend_ratios.begin(), am.trend_ratios.end());
    }

    rep.correlation = r.returns.cols() >= 3 ? correlation_map(r)
                                            : Eigen::MatrixXd::Constant(r.returns.rows(),
                                                                        r.returns.rows(), kNaN);

    if (r.returns.cols() >= opt.similarity_window)
        rep.similarity = directional_similarity(r, opt.similarity_window, opt.similarity_step);

    IndexSeries index = equal_weight_index(r);
    std::vector<double> ir(index.values.size() - 1);
    for (size_t t = 0; t + 1 < index.values.size(); ++t)
        ir[t] = index.values[t + 1] / index.values[t] - 1.0;
    fill_series_metrics(rep.index, ir, opt);
    try {
        rep.index.trend_count =
            static_cast<Eigen::Index>(detect_trends(index.values, opt.theta).size());
    } catch (const std::exception&) {
        rep.index.trend_count = -1;
    }

    rep.kurtosis_box = summarize_box(kurts);
    rep.skewness_box = summarize_box(skews);
    rep.avg_abs_acf_returns_box = summarize_box(acf_rets);
    rep.avg_abs_acf_abs_returns_box = summarize_box(acf_abss);
    rep.trend_ratio_box = summarize_box(pooled_ratios);
    rep.similarity_box = summarize_box(rep.similarity);
    return rep;
}

// --- serialization ------------------------------------------------------

namespace {

using nlohmann::json;

double num_or_nan(const json& v) { return v.is_null() ? kNaN : v.get<double>(); }

json box_to_json(const BoxSummary& b) {
    return json{{"min", b.min},
                {"q1", b.q1},
                {"median", b.median},
                {"q3", b.q3},
                {"max", b.max},
                {"lo_whisker", b.lo_whisker},
                {"hi_whisker", b.hi_whisker},
                {"n", b.n},
                {"n_outliers", b.n_outliers}};
}

BoxSummary box_from_json(const json& j) {
    BoxSummary b;
    b.min = num_or_nan(j.at("min"));
    b.q1 = num_or_nan(j.at("q1"));
    b.median = num_or_nan(j.at("median"));
    b.q3 = num_or_nan(j.at("q3"));
    b.max = num_or_nan(j.at("max"));
    b.lo_whisker = num_or_nan(j.at("lo_whisker"));
    b.hi_whisker = num_or_nan(j.at("hi_whisker"));
    b.n = j.at("n").get<Eigen::Index>();
    b.n_outliers = j.at("n_outliers").get<Eigen::Index>();
    return b;
}

std::vector<double> doubles_from_json(const json& a) {
    std::vector<double> v;
    v.reserve(a.size());
    for (const auto& e : a) v.push_back(num_or_nan(e));
    return v;
}

} // namespace

void save_metrics_report(const std::filesystem::path& path, const MetricsReport& rep) {
    json doc;
    doc["options"] = {{"theta", rep.options.theta},
                      {"rolling_window", rep.options.rolling_window},
                      {"rolling_step", rep.options.rolling_step},
                      {"acf_lags_returns", rep.options.acf_lags_returns},
                      {"acf_lags_abs", rep.options.acf_lags_abs},
                      {"similarity_window", rep.options.similarity_window},
                      {"similarity_step", rep.options.similarity_step}};
    doc["asset_count"] = rep.asset_count;
    doc["day_count"] = rep.day_count;

    json assets = json::array();
    for (const auto& a : rep.assets) {
        json ja;
        ja["asset"] = a.asset;
        ja["kurtosis"] = a.kurtosis;
        ja["skewness"] = a.skewness;
        ja["avg_abs_acf_returns"] = a.avg_abs_acf_returns;
        ja["avg_abs_acf_abs_returns"] = a.avg_abs_acf_abs_returns;
        ja["trend_count"] = a.trend_count;
        ja["trend_ratios"] = a.trend_ratios;
        json rolling = json::array();
        for (const auto& p : a.rolling)
            rolling.push_back(json{{"t", p.t}, {"kurtosis", p.kurtosis}, {"skewness", p.skewness}});
        ja["rolling"] = std::move(rolling);
        ja["acf_returns"] = a.acf_returns;
        ja["acf_abs_returns"] = a.acf_abs_returns;
        assets.push_back(std::move(ja));
    }
    doc["per_asset"] = std::move(assets);

    json corr = json::array();
    for (Eigen::Index i = 0; i < rep.correlation.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < rep.correlation.cols(); ++j)
            row.push_back(rep.correlation(i, j));
        corr.push_back(std::move(row));
    }
    doc["correlation"] = std::move(corr);
    doc["similarity"] = rep.similarity;

    doc["index"] = {{"kurtosis", rep.index.kurtosis},
                    {"skewness", rep.index.skewness},
                    {"avg_abs_acf_returns", rep.index.avg_abs_acf_returns},
                    {"avg_abs_acf_abs_returns", rep.index.avg_abs_acf_abs_returns},
                    {"trend_count", rep.index.trend_count},
                    {"acf_returns", rep.index.acf_returns},
                    {"acf_abs_returns", rep.index.acf_abs_returns}};

    doc["distributions"] = {{"kurtosis", box_to_json(rep.kurtosis_box)},
                            {"skewness", box_to_json(rep.skewness_box)},
                            {"avg_abs_acf_returns", box_to_json(rep.avg_abs_acf_returns_box)},
                            {"avg_abs_acf_abs_returns",
                             box_to_json(rep.avg_abs_acf_abs_returns_box)},
                            {"trend_ratio", box_to_json(rep.trend_ratio_box)},
                            {"similarity", box_to_json(rep.similarity_box)}};

    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open for writing: " + path.string());
    f << doc.dump(2) << '\n';
    if (!f)
        throw DataError("write failed: " + path.string());
}

MetricsReport load_metrics_report(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open: " + path.string());
    json doc;
    try {
        f >> doc;
    } catch (const json::exception& e) {
        throw ParseError("metrics report " + path.string() + ": " + e.what());
    }
    try {
        MetricsReport rep;
        const auto& jo = doc.at("options");
        rep.options.theta = jo.at("theta").get<double>();
        rep.options.rolling_window = jo.at("rolling_window").get<Eigen::Index>();
        rep.options.rolling_step = jo.at("rolling_step").get<Eigen::Index>();
        rep.options.acf_lags_returns = jo.at("acf_lags_returns").get<Eigen::Index>();
        rep.options.acf_lags_abs = jo.at("acf_lags_abs").get<Eigen::Index>();
        rep.options.similarity_window = jo.at("similarity_window").get<Eigen::Index>();
        rep.options.similarity_step = jo.at("similarity_step").get<Eigen::Index>();
        rep.asset_count = doc.at("asset_count").get<Eigen::Index>();
        rep.day_count = doc.at("day_count").get<Eigen::Index>();

        for (const auto& ja : doc.at("per_asset")) {
            AssetMetrics a;
            a.asset = ja.at("asset").get<std::string>();
            a.kurtosis = num_or_nan(ja.at("kurtosis"));
            a.skewness = num_or_nan(ja.at("skewness"));
            a.avg_abs_acf_returns = num_or_nan(ja.at("avg_abs_acf_returns"));
            a.avg_abs_acf_abs_returns = num_or_nan(ja.at("avg_abs_acf_abs_returns"));
            a.trend_count = ja.at("trend_count").get<Eigen::Index>();
            a.trend_ratios = doubles_from_json(ja.at("trend_ratios"));
            for (const auto& jp : ja.at("rolling"))
                a.rolling.push_back({jp.at("t").get<Eigen::Index>(), num_or_nan(jp.at("kurtosis")),
                                     num_or_nan(jp.at("skewness"))});
            a.acf_returns = doubles_from_json(ja.at("acf_returns"));
            a.acf_abs_returns = doubles_from_json(ja.at("acf_abs_returns"));
            rep.assets.push_back(std::move(a));
        }

        const auto& jc = doc.at("correlation");
        rep.correlation.resize(static_cast<Eigen::Index>(jc.size()),
                               static_cast<Eigen::Index>(jc.size()));
        for (size_t i = 0; i < jc.size(); ++i) {
            if (jc[i].size() != jc.size())
                throw ParseError("metrics report: ragged correlation matrix");
            for (size_t j = 0; j < jc[i].size(); ++j)
                rep.correlation(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    num_or_nan(jc[i][j]);
        }
        rep.similarity = doubles_from_json(doc.at("similarity"));

        const auto& ji = doc.at("index");
        rep.index.kurtosis = num_or_nan(ji.at("kurtosis"));
        rep.index.skewness = num_or_nan(ji.at("skewness"));
        rep.index.avg_abs_acf_returns = num_or_nan(ji.at("avg_abs_acf_returns"));
        rep.index.avg_abs_acf_abs_returns = num_or_nan(ji.at("avg_abs_acf_abs_returns"));
        rep.index.trend_count = ji.at("trend_count").get<Eigen::Index>();
        rep.index.acf_returns = doubles_from_json(ji.at("acf_returns"));
        rep.index.acf_abs_returns = doubles_from_json(ji.at("acf_abs_returns"));

        const auto& jd = doc.at("distributions");
        rep.kurtosis_box = box_from_json(jd.at("kurtosis"));
        rep.skewness_box = box_from_json(jd.at("skewness"));
        rep.avg_abs_acf_returns_box = box_from_json(jd.at("avg_abs_acf_returns"));
        rep.avg_abs_acf_abs_returns_box = box_from_json(jd.at("avg_abs_acf_abs_returns"));
        rep.trend_ratio_box = box_from_json(jd.at("trend_ratio"));
        rep.similarity_box = box_from_json(jd.at("similarity"));
        return rep;
    } catch (const json::exception& e) {
        throw ParseError("metrics report " + path.string() + ": " + e.what());
    }
}

// --- CSV / plot-data emission -------------------------------------------

namespace {

void append_num(std::string& out, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open for writing: " + path.string());
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f)
        throw DataError("write failed: " + path.string());
}

} // namespace

std::vector<std::string> write_metrics_csvs(const std::filesystem::path& dir,
                                            const MetricsReport& rep) {
    std::vector<std::string> files;
    auto emit = [&](const std::string& name, const std::string& text) {
        write_text(dir / name, text);
        files.push_back(name);
    };

    {
        std::string t = "asset,kurtosis,skewness,avg_abs_acf_returns,avg_abs_acf_abs_returns,"
                        "trend_count\n";
        for (const auto& a : rep.assets) {
            t += a.asset;
            t += ',';
            append_num(t, a.kurtosis);
            t += ',';
            append_num(t, a.skewness);
            t += ',';
            append_num(t, a.avg_abs_acf_returns);
            t += ',';
            append_num(t, a.avg_abs_acf_abs_returns);
            t += ',';
            t += std::to_string(a.trend_count);
            t += '\n';
        }
        emit("metrics_per_asset.csv", t);
    }
    {
        std::string t = "asset,t,kurtosis,skewness\n";
        for (const auto& a : rep.assets)
            for (const auto& p : a.rolling) {
                t += a.asset;
                t += ',';
                t += std::to_string(p.t);
                t += ',';
                append_num(t, p.kurtosis);
                t += ',';
                append_num(t, p.skewness);
                t += '\n';
            }
        emit("metrics_rolling.csv", t);
    }
    for (bool abs_kind : {false, true}) {
        std::string t = "asset,lag,value\n";
        for (const auto& a : rep.assets) {
            const auto& series = abs_kind ? a.acf_abs_returns : a.acf_returns;
            for (size_t k = 0; k < series.size(); ++k) {
                t += a.asset;
                t += ',';
                t += std::to_string(k + 1);
                t += ',';
                append_num(t, series[k]);
                t += '\n';
            }
        }
        const auto& iseries = abs_kind ? rep.index.acf_abs_returns : rep.index.acf_returns;
        for (size_t k = 0; k < iseries.size(); ++k) {
            t += "(index),";
            t += std::to_string(k + 1);
            t += ',';
            append_num(t, iseries[k]);
            t += '\n';
        }
        emit(abs_kind ? "metrics_acf_abs_returns.csv" : "metrics_acf_returns.csv", t);
    }
    {
        std::string t = "asset,ratio\n";
        for (const auto& a : rep.assets)
            for (double v : a.trend_ratios) {
                t += a.asset;
                t += ',';
                append_num(t, v);
                t += '\n';
            }
        emit("metrics_trend_ratios.csv", t);
    }
    {
        std::string t = "position,value\n";
        for (size_t i = 0; i < rep.similarity.size(); ++i) {
            t += std::to_string(i * static_cast<size_t>(rep.options.similarity_step));
            t += ',';
            append_num(t, rep.similarity[i]);
            t += '\n';
        }
        emit("metrics_similarity.csv", t);
    }
    {
        std::string t = "i,j,value\n";
        for (Eigen::Index i = 0; i < rep.correlation.rows(); ++i)
            for (Eigen::Index j = 0; j < rep.correlation.cols(); ++j) {
                t += std::to_string(i);
                t += ',';
                t += std::to_string(j);
                t += ',';
                append_num(t, rep.correlation(i, j));
                t += '\n';
            }
        emit("metrics_correlation.csv", t);
    }
    {
        std::string t = "metric,value\n";
        auto row = [&](const char* name, double v) {
            t += name;
            t += ',';
            append_num(t, v);
            t += '\n';
        };
        row("kurtosis", rep.index.kurtosis);
        row("skewness", rep.index.skewness);
        row("avg_abs_acf_returns", rep.index.avg_abs_acf_returns);
        row("avg_abs_acf_abs_returns", rep.index.avg_abs_acf_abs_returns);
        t += "trend_count," + std::to_string(rep.index.trend_count) + "\n";
        emit("metrics_index.csv", t);
    }
    {
        std::string t = "metric,min,q1,median,q3,max,lo_whisker,hi_whisker,n,n_outliers\n";
        auto row = [&](const char* name, const BoxSummary& b) {
            t += name;
            for (double v : {b.min, b.q1, b.median, b.q3, b.max, b.lo_whisker, b.hi_whisker}) {
                t += ',';
                append_num(t, v);
            }
            t += ',' + std::to_string(b.n) + ',' + std::to_string(b.n_outliers) + '\n';
        };
        row("kurtosis", rep.kurtosis_box);
        row("skewness", rep.skewness_box);
        row("avg_abs_acf_returns", rep.avg_abs_acf_returns_box);
        row("avg_abs_acf_abs_returns", rep.avg_abs_acf_abs_returns_box);
        row("trend_ratio", rep.trend_ratio_box);
        row("similarity", rep.similarity_box);
        emit("metrics_boxes.csv", t);
    }
    return files;
}

// --- comparison ----------------------------------------------------------

namespace {

double nan_mean(const std::vector<double>& v) {
    double s = 0;
    size_t n = 0;
    for (double x : v)
        if (!std::isnan(x)) {
            s += x;
            ++n;
        }
    return n ? s / static_cast<double>(n) : kNaN;
}

double nan_median(std::vector<double> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
    if (v.empty())
        return kNaN;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> offdiag(const Eigen::MatrixXd& m) {
    std::vector<double> v;
    v.reserve(static_cast<size_t>(m.rows() * (m.rows() - 1)));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j)
                v.push_back(m(i, j));
    return v;
}

template <typename F>
std::vector<double> collect(const MetricsReport& r, F&& get) {
    std::vector<double> v;
    v.reserve(r.assets.size());
    for (const auto& a : r.assets) v.push_back(get(a));
    return v;
}

} // namespace

CompareReport compare_reports(const MetricsReport& a, const MetricsReport& b) {
    CompareReport out;
    auto add = [&](const std::string& name, std::vector<double> va, std::vector<double> vb) {
        out.rows.push_back(
            {name, nan_median(va), nan_median(vb), nan_mean(va), nan_mean(vb)});
    };

    add("kurtosis", collect(a, [](const AssetMetrics& m) { return m.kurtosis; }),
        collect(b, [](const AssetMetrics& m) { return m.kurtosis; }));
    add("skewness", collect(a, [](const AssetMetrics& m) { return m.skewness; }),
        collect(b, [](const AssetMetrics& m) { return m.skewness; }));
    add("avg_abs_acf_returns",
        collect(a, [](const AssetMetrics& m) { return m.avg_abs_acf_returns; }),
        collect(b, [](const AssetMetrics& m) { return m.avg_abs_acf_returns; }));
    add("avg_abs_acf_abs_returns",
        collect(a, [](const AssetMetrics& m) { return m.avg_abs_acf_abs_returns; }),
        collect(b, [](const AssetMetrics& m) { return m.avg_abs_acf_abs_returns; }));
    add("trend_count",
        collect(a, [](const AssetMetrics& m) {
            return m.trend_count < 0 ? kNaN : static_cast<double>(m.trend_count);
        }),
        collect(b, [](const AssetMetrics& m) {
            return m.trend_count < 0 ? kNaN : static_cast<double>(m.trend_count);
        }));

    std::vector<double> ra, rb;
    for (const auto& m : a.assets) ra.insert(ra.end(), m.trend_ratios.begin(), m.trend_ratios.end());
    for (const auto& m : b.assets) rb.insert(rb.end(), m.trend_ratios.begin(), m.trend_ratios.end());
    add("trend_ratio", std::move(ra), std::move(rb));
    add("similarity", a.similarity, b.similarity);
    add("correlation_offdiag", offdiag(a.correlation), offdiag(b.correlation));
    add("index_kurtosis", {a.index.kurtosis}, {b.index.kurtosis});
    add("index_avg_abs_acf_abs_returns", {a.index.avg_abs_acf_abs_returns},
        {b.index.avg_abs_acf_abs_returns});

    if (a.correlation.rows() == b.correlation.rows() && a.correlation.rows() > 1) {
        double s = 0;
        size_t n = 0;
        for (Eigen::Index i = 0; i < a.correlation.rows(); ++i)
            for (Eigen::Index j = 0; j < a.correlation.cols(); ++j)
                if (i != j && !std::isnan(a.correlation(i, j)) &&
                    !std::isnan(b.correlation(i, j))) {
                    s += std::abs(a.correlation(i, j) - b.correlation(i, j));
                    ++n;
                }
        out.correlation_mad = n ? s / static_cast<double>(n) : kNaN;
    } else {
        out.correlation_mad = kNaN;
    }
    out.similarity_mean_delta = nan_mean(a.similarity) - nan_mean(b.similarity);
    return out;
}

void save_compare_report(const std::filesystem::path& path, const CompareReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back(json{{"metric", r.metric},
                            {"a_median", r.a_median},
                            {"b_median", r.b_median},
                            {"delta_median", r.b_median - r.a_median},
                            {"a_mean", r.a_mean},
                            {"b_mean", r.b_mean},
                            {"delta_mean", r.b_mean - r.a_mean}});
    json doc{{"rows", std::move(rows)},
             {"correlation_mad", rep.correlation_mad},
             {"similarity_mean_delta", rep.similarity_mean_delta}};
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open for writing: " + path.string());
    f << doc.dump(2) << '\n';
    if (!f)
        throw DataError("write failed: " + path.string());
}

std::string render_compare_table(const CompareReport& rep) {
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%-28s %12s %12s %12s\n", "metric", "A median", "B median",
                  "delta");
    out += buf;
    for (const auto& r : rep.rows) {
        std::snprintf(buf, sizeof(buf), "%-28s %12.6f %12.6f %12.6f\n", r.metric.c_str(),
                      r.a_median, r.b_median, r.b_median - r.a_median);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "%-28s %12.6f\n", "correlation_mad", rep.correlation_mad);
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-28s %12.6f\n", "similarity_mean_delta",
                  rep.similarity_mean_delta);
    out += buf;
    return out;
}

} // namespace scengen
