#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "scengen/error.hpp"

namespace scengen {

// Daily price panel: one row per asset, one column per trading day.
// Prices are strictly positive once cleaned.
struct PricePanel {
    std::vector<std::string> assets;
    std::vector<std::string> days;
    Eigen::MatrixXd prices; // S x T

    Eigen::Index asset_count() const { return prices.rows(); }
    Eigen::Index day_count() const { return prices.cols(); }
};

// Daily simple-return panel: returns[s][t] = p[s][t+1]/p[s][t] - 1.
struct ReturnPanel {
    std::vector<std::string> assets;
    std::vector<std::string> days;
    Eigen::MatrixXd returns; // S x T

    Eigen::Index asset_count() const { return returns.rows(); }
    Eigen::Index day_count() const { return returns.cols(); }
};

// Simple returns of consecutive prices. Day labels keep the later day of
// each price pair.
ReturnPanel to_returns(const PricePanel& p);

// Inverse of to_returns with every asset re-based at price 1. The extra
// leading price day is labeled "start".
PricePanel returns_to_prices(const ReturnPanel& r);

// Divide each asset's series by its first price so p[s][0] == 1.
PricePanel normalize_prices(const PricePanel& p);

// Remove days where every asset's return is exactly zero (closed market).
ReturnPanel drop_closed_days(const ReturnPanel& r);

// Price-level equivalent: drop days whose prices all exactly repeat the
// previous day's. The first day is always kept.
PricePanel drop_closed_days(const PricePanel& p);

} // namespace scengen
