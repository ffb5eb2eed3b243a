#include "scengen/fixture.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scengen/error.hpp"
#include "scengen/panel_io.hpp"
#include "scengen/rng.hpp"

namespace scengen {

namespace {

// Business-day labels starting 2005-01-03 (a Monday), skipping weekends.
std::vector<std::string> business_days(Eigen::Index count) {
    static const int mdays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int y = 2005, m = 1, d = 3, wd = 0; // wd 0 = Monday
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(count));
    auto leap = [](int yy) { return (yy % 4 == 0 && yy % 100 != 0) || yy % 400 == 0; };
    while (static_cast<Eigen::Index>(out.size()) < count) {
        if (wd < 5) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
            out.emplace_back(buf);
        }
        wd = (wd + 1) % 7;
        int lim = mdays[m - 1] + (m == 2 && leap(y) ? 1 : 0);
        if (++d > lim) {
            d = 1;
            if (++m > 12) {
                m = 1;
                ++y;
            }
        }
    }
    return out;
}

} // namespace

PricePanel make_fixture(const FixtureOptions& opt) {
    if (opt.assets < 1 || opt.days < 1)
        throw std::invalid_argument("make_fixture: assets and days must be >= 1");

    RngStream market_rng = RngStream::substream(opt.seed, 0);
    RngStream regime_rng = RngStream::substream(opt.seed, 1);
    RngStream asset_rng = RngStream::substream(opt.seed, 2);

    const Eigen::Index s = opt.assets;
    const Eigen::Index t = opt.days;

    // Calm regime: mild upward drift; turbulent: stronger negative drift,
    // several times the volatility, shorter typical duration.
    const double drift[2] = {0.0006, -0.001};
    const double mvol[2] = {0.005, 0.03};
    const double stay[2] = {0.99, 0.97};

    std::vector<int> regime(static_cast<size_t>(t));
    int reg = 0;
    for (Eigen::Index k = 0; k < t; ++k) {
        regime[static_cast<size_t>(k)] = reg;
        if (regime_rng.uniform() >= stay[reg])
            reg = 1 - reg;
    }

    Eigen::VectorXd beta(s), idio(s), start_price(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        beta[i] = 0.6 + 0.8 * asset_rng.uniform();
        idio[i] = 0.005 + 0.015 * asset_rng.uniform();
        start_price[i] = 20.0 + 180.0 * asset_rng.uniform();
    }

    PricePanel panel;
    panel.days = business_days(t + 1);
    panel.assets.reserve(static_cast<size_t>(s));
    for (Eigen::Index i = 0; i < s; ++i) {
        std::string id = std::to_string(i + 1);
        while (id.size() < 3) id.insert(id.begin(), '0');
        panel.assets.push_back("AST" + id);
    }
    panel.prices.resize(s, t + 1);
    panel.prices.col(0) = start_price;

    for (Eigen::Index k = 0; k < t; ++k) {
        const int rg = regime[static_cast<size_t>(k)];
        const double m = drift[rg] + mvol[rg] * market_rng.normal();
        const double widen = rg == 1 ? 2.5 : 1.0;
        for (Eigen::Index i = 0; i < s; ++i) {
            double r = beta[i] * m + widen * idio[i] * asset_rng.normal();
            if (r <= -0.95)
                r = -0.95;
            panel.prices(i, k + 1) = panel.prices(i, k) * (1.0 + r);
        }
    }
    return panel;
}

void write_fixture_csv(const std::filesystem::path& path, const FixtureOptions& opt) {
    PricePanel panel = make_fixture(opt);

    if (!opt.dirty) {
        save_price_csv(path, panel);
        return;
    }

    RngStream dirt = RngStream::substream(opt.seed, 3);
    // Exchange holidays: ~1% of days repeat the previous close everywhere.
    for (Eigen::Index d = 1; d < panel.prices.cols(); ++d)
        if (dirt.uniform() < 0.01)
            panel.prices.col(d) = panel.prices.col(d - 1);

    auto fmt = [](double v) {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    };

    std::string text = "day";
    for (const auto& a : panel.assets) text += "," + a;
    text += ",ZZFAIL\n"; // missing first observation: must be rejected
    for (Eigen::Index d = 0; d < panel.prices.cols(); ++d) {
        text += panel.days[static_cast<size_t>(d)];
        for (Eigen::Index i = 0; i < panel.prices.rows(); ++i) {
            text += ',';
            // sparse interior gaps for the forward-fill path
            if (d > 0 && d + 1 < panel.prices.cols() && dirt.uniform() < 0.002)
                continue;
            text += fmt(panel.prices(i, d));
        }
        text += ',';
        if (d > 0)
            text += fmt(100.0 + static_cast<double>(d));
        text += '\n';
    }

    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open for writing: " + path.string());
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f)
        throw DataError("write failed: " + path.string());
}

} // namespace scengen
