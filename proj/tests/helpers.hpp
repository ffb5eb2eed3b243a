#pragma once

// Shared test helpers: deliberately naive reference implementations
// (plain loops, no reuse of library internals) plus small utilities.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "scengen/panel.hpp"

namespace oracle {

inline double mean(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Population central moment of order k.
inline double central_moment(const std::vector<double>& x, int k) {
    const double m = mean(x);
    double s = 0;
    for (double v : x) s += std::pow(v - m, k);
    return s / static_cast<double>(x.size());
}

inline double kurtosis(const std::vector<double>& x) {
    const double m2 = central_moment(x, 2);
    return central_moment(x, 4) / (m2 * m2);
}

inline double skewness(const std::vector<double>& x) {
    const double m2 = central_moment(x, 2);
    return central_moment(x, 3) / std::pow(m2, 1.5);
}

// acf(k) = [sum_{t<n-k} (x_t - m)(x_{t+k} - m) / (n - k)] / [sum (x_t - m)^2 / n]
inline std::vector<double> acf(const std::vector<double>& x, long max_lag) {
    const long n = static_cast<long>(x.size());
    const double m = mean(x);
    double denom = 0;
    for (double v : x) denom += (v - m) * (v - m);
    denom /= static_cast<double>(n);
    std::vector<double> out;
    for (long k = 1; k <= max_lag; ++k) {
        double num = 0;
        for (long t = 0; t + k < n; ++t)
            num += (x[static_cast<size_t>(t)] - m) * (x[static_cast<size_t>(t + k)] - m);
        num /= static_cast<double>(n - k);
        out.push_back(num / denom);
    }
    return out;
}

// Pairwise two-pass Pearson correlation of panel rows.
inline Eigen::MatrixXd correlation(const Eigen::MatrixXd& r) {
    const Eigen::Index s = r.rows(), t = r.cols();
    Eigen::VectorXd mu(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        double acc = 0;
        for (Eigen::Index j = 0; j < t; ++j) acc += r(i, j);
        mu[i] = acc / static_cast<double>(t);
    }
    Eigen::MatrixXd out(s, s);
    for (Eigen::Index a = 0; a < s; ++a)
        for (Eigen::Index b = 0; b < s; ++b) {
            double sab = 0, saa = 0, sbb = 0;
            for (Eigen::Index j = 0; j < t; ++j) {
                const double da = r(a, j) - mu[a], db = r(b, j) - mu[b];
                sab += da * db;
                saa += da * da;
                sbb += db * db;
            }
            out(a, b) = a == b ? 1.0 : sab / std::sqrt(saa * sbb);
        }
    return out;
}

// Unbiased covariance of the columns of a slice, two-pass loops.
inline Eigen::MatrixXd covariance(const Eigen::MatrixXd& slice) {
    const Eigen::Index s = slice.rows(), k = slice.cols();
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(s);
    for (Eigen::Index j = 0; j < k; ++j) mu += slice.col(j);
    mu /= static_cast<double>(k);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(s, s);
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::VectorXd d = slice.col(j) - mu;
        out += d * d.transpose();
    }
    return out / static_cast<double>(k - 1);
}

// Directional-change reference: rescans the extremum over the whole open
// trend at every step instead of tracking it incrementally.
struct DcSeg {
    long start = 0, end = 0;
    int sign = 0; // +1 up, -1 down
    bool confirmed = false;
};

inline std::vector<DcSeg> dc_reference(const std::vector<double>& s, double theta) {
    const long n = static_cast<long>(s.size());
    std::vector<DcSeg> out;
    int mode = 0; // 0 unknown, +1 up, -1 down
    long anchor = 0;
    for (long t = 1; t < n; ++t) {
        if (mode == 0) {
            long ihi = 0, ilo = 0;
            for (long u = 1; u <= t; ++u) {
                if (s[static_cast<size_t>(u)] > s[static_cast<size_t>(ihi)]) ihi = u;
                if (s[static_cast<size_t>(u)] < s[static_cast<size_t>(ilo)]) ilo = u;
            }
            if (s[static_cast<size_t>(t)] <= s[static_cast<size_t>(ihi)] * (1.0 - theta)) {
                if (ihi > 0) out.push_back({0, ihi, +1, false});
                mode = -1;
                anchor = ihi;
            } else if (s[static_cast<size_t>(t)] >= s[static_cast<size_t>(ilo)] * (1.0 + theta)) {
                if (ilo > 0) out.push_back({0, ilo, -1, false});
                mode = +1;
                anchor = ilo;
            }
        } else if (mode > 0) {
            long ihi = anchor;
            for (long u = anchor + 1; u <= t; ++u)
                if (s[static_cast<size_t>(u)] > s[static_cast<size_t>(ihi)]) ihi = u;
            if (s[static_cast<size_t>(t)] <= s[static_cast<size_t>(ihi)] * (1.0 - theta)) {
                out.push_back({anchor, ihi, +1, true});
                mode = -1;
                anchor = ihi;
            }
        } else {
            long ilo = anchor;
            for (long u = anchor + 1; u <= t; ++u)
                if (s[static_cast<size_t>(u)] < s[static_cast<size_t>(ilo)]) ilo = u;
            if (s[static_cast<size_t>(t)] >= s[static_cast<size_t>(ilo)] * (1.0 + theta)) {
                out.push_back({anchor, ilo, -1, true});
                mode = +1;
                anchor = ilo;
            }
        }
    }
    if (mode == 0) {
        const double tr = s[static_cast<size_t>(n - 1)] / s[0] - 1.0;
        out.push_back({0, n - 1, tr > 0.0 ? +1 : -1, false});
    } else {
        out.push_back({anchor, n - 1, mode, false});
    }
    return out;
}

// Type-7 quantile of already-sorted values.
inline double quantile7(const std::vector<double>& sorted, double p) {
    const double h = p * (static_cast<double>(sorted.size()) - 1.0);
    const size_t lo = static_cast<size_t>(std::floor(h));
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

} // namespace oracle

namespace testutil {

// Self-cleaning temp directory.
class TempDir {
  public:
    explicit TempDir(const std::string& tag = "scengen-test") {
        auto base = std::filesystem::temp_directory_path();
        std::string tpl = (base / (tag + ".XXXXXX")).string();
        std::vector<char> buf(tpl.begin(), tpl.end());
        buf.push_back('\0');
        if (!mkdtemp(buf.data()))
            throw std::runtime_error("mkdtemp failed");
        path_ = buf.data();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

// Random return panel around zero; test-local RNG, values are small
// enough for valid prices.
inline scengen::ReturnPanel random_panel(Eigen::Index s, Eigen::Index t, unsigned seed,
                                         double vol = 0.01) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, vol);
    scengen::ReturnPanel r;
    r.returns.resize(s, t);
    for (Eigen::Index i = 0; i < s; ++i)
        for (Eigen::Index j = 0; j < t; ++j)
            r.returns(i, j) = gauss(eng);
    for (Eigen::Index i = 0; i < s; ++i) r.assets.push_back("A" + std::to_string(i));
    for (Eigen::Index j = 0; j < t; ++j) r.days.push_back("d" + std::to_string(j + 1));
    return r;
}

inline std::vector<double> random_walk_prices(long n, unsigned seed, double vol = 0.02,
                                              double drift = 0.0) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(drift, vol);
    std::vector<double> p(static_cast<size_t>(n));
    p[0] = 100.0;
    for (long t = 1; t < n; ++t)
        p[static_cast<size_t>(t)] = p[static_cast<size_t>(t - 1)] * (1.0 + gauss(eng));
    return p;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

inline bool same_bytes(const std::filesystem::path& a, const std::filesystem::path& b) {
    return slurp(a) == slurp(b);
}

} // namespace testutil
