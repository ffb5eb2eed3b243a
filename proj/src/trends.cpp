#include "scengen/trends.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "scengen/error.hpp"

namespace scengen {

IndexSeries equal_weight_index(const ReturnPanel& r) {
    if (r.returns.rows() == 0)
        throw std::invalid_argument("equal_weight_index: panel has no assets");
    IndexSeries out;
    out.days = r.days;
    out.values.resize(static_cast<size_t>(r.returns.cols()) + 1);
    out.values[0] = 1.0;
    for (Eigen::Index t = 0; t < r.returns.cols(); ++t) {
        double m = r.returns.col(t).mean();
        if (m <= -1.0)
            throw DataError("equal_weight_index: mean return <= -1 on day " +
                            (static_cast<size_t>(t) < r.days.size() ? r.days[static_cast<size_t>(t)]
                                                                    : std::to_string(t)));
        out.values[static_cast<size_t>(t) + 1] = out.values[static_cast<size_t>(t)] * (1.0 + m);
    }
    return out;
}

namespace {

double span_return(std::span<const double> s, Eigen::Index a, Eigen::Index b) {
    return s[static_cast<size_t>(b)] / s[static_cast<size_t>(a)] - 1.0;
}

} // namespace

std::vector<TrendSegment> detect_trends(std::span<const double> series, double theta) {
    if (!(theta > 0.0))
        throw std::invalid_argument("detect_trends: theta must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(series.size());
    if (n < 2)
        throw std::invalid_argument("detect_trends: need at least two price observations");
    for (size_t i = 0; i < series.size(); ++i)
        if (!(series[i] > 0.0) || !std::isfinite(series[i]))
            throw DataError("detect_trends: non-positive or non-finite price at position " +
                            std::to_string(i));

    std::vector<TrendSegment> segs;
    auto emit = [&](Eigen::Index a, Eigen::Index b, TrendSign sign, bool confirmed) {
        assert(b > a);
        segs.push_back({a, b, sign, theta, span_return(series, a, b), confirmed});
    };

    enum class Mode { unknown, up, down };
    Mode mode = Mode::unknown;
    // While direction is unknown both running extrema are live; afterwards
    // ext tracks the current trend's extremum. A reversal dates the segment
    // boundary at that extremum; the confirming price is necessarily the
    // best extremum candidate seen since it, so the new trend starts there.
    double hi = series[0], lo = series[0];
    Eigen::Index ihi = 0, ilo = 0;
    double ext = series[0];
    Eigen::Index iext = 0;
    Eigen::Index boundary = 0;

    for (Eigen::Index t = 1; t < n; ++t) {
        const double p = series[static_cast<size_t>(t)];
        switch (mode) {
        case Mode::unknown:
            if (p > hi) { hi = p; ihi = t; }
            if (p < lo) { lo = p; ilo = t; }
            if (p <= hi * (1.0 - theta)) { // drop from the high: first trend was upward
                if (ihi > 0)
                    emit(0, ihi, TrendSign::upward, false);
                mode = Mode::down;
                boundary = ihi;
                ext = p;
                iext = t;
            } else if (p >= lo * (1.0 + theta)) {
                if (ilo > 0)
                    emit(0, ilo, TrendSign::downward, false);
                mode = Mode::up;
                boundary = ilo;
                ext = p;
                iext = t;
            }
            break;
        case Mode::up:
            if (p > ext) {
                ext = p;
                iext = t;
            } else if (p <= ext * (1.0 - theta)) {
                emit(boundary, iext, TrendSign::upward, true);
                mode = Mode::down;
                boundary = iext;
                ext = p;
                iext = t;
            }
            break;
        case Mode::down:
            if (p < ext) {
                ext = p;
                iext = t;
            } else if (p >= ext * (1.0 + theta)) {
                emit(boundary, iext, TrendSign::downward, true);
                mode = Mode::up;
                boundary = iext;
                ext = p;
                iext = t;
            }
            break;
        }
    }

    // Trailing partial segment, carrying the provisional direction. When no
    // reversal ever confirmed, direction is read off the net move.
    if (mode == Mode::unknown) {
        double tr = span_return(series, 0, n - 1);
        emit(0, n - 1, tr > 0.0 ? TrendSign::upward : TrendSign::downward, false);
    } else {
        emit(boundary, n - 1, mode == Mode::up ? TrendSign::upward : TrendSign::downward, false);
    }
    return segs;
}

double trend_ratio(const TrendSegment& seg) {
    if (!(seg.theta > 0.0))
        throw std::invalid_argument("trend_ratio: segment has non-positive theta");
    return std::abs(seg.total_return) / seg.theta;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

} // namespace

void save_trend_csv(const std::filesystem::path& path, const std::vector<TrendSegment>& segments) {
    std::string out = "start,end,sign,theta,total_return\n";
    for (const auto& s : segments) {
        out += std::to_string(s.start);
        out += ',';
        out += std::to_string(s.end);
        out += ',';
        out += to_string(s.sign);
        out += ',';
        append_double(out, s.theta);
        out += ',';
        append_double(out, s.total_return);
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open for writing: " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f)
        throw DataError("write failed: " + path.string());
}

} // namespace scengen
