#include "scengen/panel.hpp"

#include <cmath>

namespace scengen {

ReturnPanel to_returns(const PricePanel& p) {
    const Eigen::Index s = p.asset_count();
    const Eigen::Index t = p.day_count();
    if (t < 2) {
        throw DataError("to_returns: need at least 2 price days");
    }
    ReturnPanel r;
    r.assets = p.assets;
    r.days.assign(p.days.begin() + 1, p.days.end());
    r.returns.resize(s, t - 1);
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = 0; j + 1 < t; ++j) {
            r.returns(i, j) = p.prices(i, j + 1) / p.prices(i, j) - 1.0;
        }
    }
    return r;
}

PricePanel returns_to_prices(const ReturnPanel& r) {
    const Eigen::Index s = r.asset_count();
    const Eigen::Index t = r.day_count();
    PricePanel p;
    p.assets = r.assets;
    p.days.reserve(t + 1);
    p.days.push_back("start");
    p.days.insert(p.days.end(), r.days.begin(), r.days.end());
    p.prices.resize(s, t + 1);
    for (Eigen::Index i = 0; i < s; ++i) {
        p.prices(i, 0) = 1.0;
        for (Eigen::Index j = 0; j < t; ++j) {
            const double ret = r.returns(i, j);
            if (!(ret > -1.0) || !std::isfinite(ret)) {
                throw DataError("returns_to_prices: return <= -1 for asset " +
                                r.assets[static_cast<std::size_t>(i)] + " on day " +
                                r.days[static_cast<std::size_t>(j)]);
            }
            p.prices(i, j + 1) = p.prices(i, j) * (1.0 + ret);
        }
    }
    return p;
}

PricePanel normalize_prices(const PricePanel& p) {
    PricePanel out = p;
    for (Eigen::Index i = 0; i < p.asset_count(); ++i) {
        out.prices.row(i) /= p.prices(i, 0);
    }
    return out;
}

ReturnPanel drop_closed_days(const ReturnPanel& r) {
    std::vector<Eigen::Index> keep;
    keep.reserve(static_cast<std::size_t>(r.day_count()));
    for (Eigen::Index j = 0; j < r.day_count(); ++j) {
        bool all_zero = true;
        for (Eigen::Index i = 0; i < r.asset_count(); ++i) {
            if (r.returns(i, j) != 0.0) {
                all_zero = false;
                break;
            }
        }
        if (!all_zero) {
            keep.push_back(j);
        }
    }
    if (keep.empty()) {
        throw DataError("drop_closed_days: all days removed");
    }
    ReturnPanel out;
    out.assets = r.assets;
    out.days.reserve(keep.size());
    out.returns.resize(r.asset_count(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        out.days.push_back(r.days[static_cast<std::size_t>(keep[k])]);
        out.returns.col(static_cast<Eigen::Index>(k)) = r.returns.col(keep[k]);
    }
    return out;
}

PricePanel drop_closed_days(const PricePanel& p) {
    std::vector<Eigen::Index> keep;
    keep.reserve(static_cast<std::size_t>(p.day_count()));
    for (Eigen::Index j = 0; j < p.day_count(); ++j) {
        if (j == 0 || p.prices.col(j) != p.prices.col(j - 1)) {
            keep.push_back(j);
        }
    }
    PricePanel out;
    out.assets = p.assets;
    out.days.reserve(keep.size());
    out.prices.resize(p.asset_count(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        out.days.push_back(p.days[static_cast<std::size_t>(keep[k])]);
        out.prices.col(static_cast<Eigen::Index>(k)) = p.prices.col(keep[k]);
    }
    return out;
}

} // namespace scengen
