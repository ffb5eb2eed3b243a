#pragma once

#include <cstdint>
#include <filesystem>

#include "scengen/panel.hpp"

namespace scengen {

// Synthetic pseudo-market used by tests and demos: a common market
// factor driven by a two-regime (calm/turbulent) volatility process,
// plus per-asset beta and idiosyncratic noise that widens in the
// turbulent regime. Produces trend structure, volatility clustering and
// cross-correlation without any licensed data.
struct FixtureOptions {
    Eigen::Index assets = 50;
    Eigen::Index days = 2000; // return days; the price panel has days+1 rows
    uint64_t seed = 42;
    // Injects exchange holidays (repeated prices), sparse missing cells
    // and one asset with a missing first observation into the CSV so
    // ingest cleaning has something to do.
    bool dirty = false;
};

PricePanel make_fixture(const FixtureOptions& opt);

// Writes the fixture as a price CSV; with opt.dirty, cleaning targets
// are injected into the written file.
void write_fixture_csv(const std::filesystem::path& path, const FixtureOptions& opt);

} // namespace scengen
