#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scengen/panel.hpp"

namespace scengen {

struct CsvOptions {
    bool forward_fill = true; // carry last observation into interior gaps
};

// What cleaning did to the file: assets dropped and cells filled.
struct LoadReport {
    std::vector<std::string> rejected_assets;
    long filled_cells = 0;
};

// Read a price panel from CSV (`day,ASSET1,...`, one row per day).
// Assets with a missing first observation or fewer than two valid
// observations are dropped and listed in `report`. A non-positive price
// is an error. Malformed cells report their row and column.
PricePanel load_price_csv(const std::filesystem::path& path, const CsvOptions& opt = {},
                          LoadReport* report = nullptr);

// Returns panel in the same layout (values are returns, not prices).
ReturnPanel load_return_csv(const std::filesystem::path& path);

// Writers use shortest round-trip number formatting, so save/load is
// value-exact and output bytes are stable across runs.
void save_price_csv(const std::filesystem::path& path, const PricePanel& p);
void save_return_csv(const std::filesystem::path& path, const ReturnPanel& r);

} // namespace scengen
