#include "scengen/analysis.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "scengen/error.hpp"

namespace scengen {

std::vector<Eigen::Index> segment_windows(Eigen::Index segment_len, Eigen::Index L) {
    if (segment_len < 1)
        throw std::invalid_argument("segment_windows: segment_len must be >= 1");
    if (L < 2)
        throw std::invalid_argument("segment_windows: L must be >= 2");
    const Eigen::Index full = segment_len / L;
    const Eigen::Index rem = segment_len % L;
    if (full == 0)
        return {segment_len};
    std::vector<Eigen::Index> out(static_cast<size_t>(full), L);
    if (rem == 0)
        return out;
    if (2 * rem < L)
        out.back() += rem; // short remainder folded into the last block
    else
        out.push_back(rem);
    return out;
}

WindowParams estimate_window_params(const Eigen::Ref<const Eigen::MatrixXd>& slice) {
    const Eigen::Index k = slice.cols();
    if (k < 2)
        throw std::invalid_argument("estimate_window_params: window too short");
    WindowParams p;
    p.window_len = k;
    p.mu = slice.rowwise().mean();
    p.factor = (slice.colwise() - p.mu) / std::sqrt(static_cast<double>(k - 1));
    return p;
}

TrendLibrary build_trend_library(const ReturnPanel& r, double theta, Eigen::Index L) {
    IndexSeries index = equal_weight_index(r);
    auto segments = detect_trends(index.values, theta);

    TrendLibrary lib;
    lib.assets = r.assets;
    lib.theta = theta;
    lib.window_len_L = L;
    lib.trends.reserve(segments.size());

    bool saw_up = false, saw_down = false;
    for (const auto& seg : segments) {
        AnalyzedTrend trend;
        trend.sign = seg.sign;
        trend.source = seg;
        Eigen::Index offset = seg.start;
        for (Eigen::Index len : segment_windows(seg.length(), L)) {
            if (len >= 2) {
                trend.windows.push_back(estimate_window_params(r.returns.middleCols(offset, len)));
            } else {
                // single-day trend: pointwise window with zero spread
                WindowParams p;
                p.window_len = len;
                p.mu = r.returns.col(offset);
                p.factor = Eigen::MatrixXd::Zero(r.returns.rows(), 1);
                trend.windows.push_back(std::move(p));
            }
            offset += len;
        }
        (seg.sign == TrendSign::upward ? saw_up : saw_down) = true;
        lib.trends.push_back(std::move(trend));
    }
    if (!saw_up || !saw_down)
        throw DataError("build_trend_library: panel yields no " +
                        std::string(saw_up ? "downward" : "upward") +
                        " trend at theta=" + std::to_string(theta) +
                        "; use a smaller theta");
    return lib;
}

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& a) {
    Eigen::VectorXd v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    return v;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
    if (rows.empty()) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != static_cast<size_t>(m.cols()))
            throw ParseError("trend library: ragged factor matrix");
        for (size_t j = 0; j < row.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
    }
    return m;
}

} // namespace

void save_trend_library(const std::filesystem::path& path, const TrendLibrary& lib) {
    nlohmann::json doc;
    doc["assets"] = lib.assets;
    doc["theta"] = lib.theta;
    doc["L"] = lib.window_len_L;
    nlohmann::json trends = nlohmann::json::array();
    for (const auto& t : lib.trends) {
        nlohmann::json jt;
        jt["sign"] = to_string(t.sign);
        jt["start"] = t.source.start;
        jt["end"] = t.source.end;
        jt["total_return"] = t.source.total_return;
        jt["confirmed"] = t.source.confirmed;
        nlohmann::json windows = nlohmann::json::array();
        for (const auto& w : t.windows) {
            nlohmann::json jw;
            jw["len"] = w.window_len;
            jw["mu"] = vector_to_json(w.mu);
            jw["factor"] = matrix_to_json(w.factor);
            windows.push_back(std::move(jw));
        }
        jt["windows"] = std::move(windows);
        trends.push_back(std::move(jt));
    }
    doc["trends"] = std::move(trends);

    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open for writing: " + path.string());
    f << doc.dump(2) << '\n';
    if (!f)
        throw DataError("write failed: " + path.string());
}

TrendLibrary load_trend_library(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open: " + path.string());
    nlohmann::json doc;
    try {
        f >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("trend library " + path.string() + ": " + e.what());
    }
    try {
        TrendLibrary lib;
        lib.assets = doc.at("assets").get<std::vector<std::string>>();
        lib.theta = doc.at("theta").get<double>();
        lib.window_len_L = doc.at("L").get<Eigen::Index>();
        for (const auto& jt : doc.at("trends")) {
            AnalyzedTrend t;
            const std::string sign = jt.at("sign").get<std::string>();
            if (sign != "upward" && sign != "downward")
                throw ParseError("trend library: unknown sign '" + sign + "'");
            t.sign = sign == "upward" ? TrendSign::upward : TrendSign::downward;
            t.source.start = jt.at("start").get<Eigen::Index>();
            t.source.end = jt.at("end").get<Eigen::Index>();
            t.source.sign = t.sign;
            t.source.theta = lib.theta;
            t.source.total_return = jt.value("total_return", 0.0);
            t.source.confirmed = jt.value("confirmed", false);
            for (const auto& jw : jt.at("windows")) {
                WindowParams w;
                w.window_len = jw.at("len").get<Eigen::Index>();
                w.mu = vector_from_json(jw.at("mu"));
                w.factor = matrix_from_json(jw.at("factor"));
                if (w.factor.rows() != w.mu.size())
                    throw ParseError("trend library: factor row count does not match mu length");
                t.windows.push_back(std::move(w));
            }
            if (t.windows.empty())
                throw ParseError("trend library: trend with no windows");
            lib.trends.push_back(std::move(t));
        }
        return lib;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("trend library " + path.string() + ": " + e.what());
    }
}

} // namespace scengen
