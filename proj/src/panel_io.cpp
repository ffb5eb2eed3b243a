#include "scengen/panel_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace scengen {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
    std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": cannot parse '" + s + "' as a number");
    }
    if (!std::isfinite(value)) {
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": non-finite value");
    }
    return value;
}

void format_value(std::string& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    out.append(buf, ptr);
}

struct RawTable {
    std::vector<std::string> assets;
    std::vector<std::string> days;
    // cells[col][row]: per-asset series, NaN marks a missing cell
    std::vector<std::vector<double>> cells;
};

RawTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    RawTable tab;
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("row 1: empty file");
    }
    auto header = split_csv_line(line);
    if (header.size() < 2 || trim(header[0]) != "day") {
        throw ParseError("row 1: header must be 'day,ASSET1,...'");
    }
    for (std::size_t c = 1; c < header.size(); ++c) {
        std::string name = trim(header[c]);
        if (name.empty()) {
            throw ParseError("row 1, column " + std::to_string(c + 1) + ": empty asset name");
        }
        tab.assets.push_back(name);
    }
    const std::size_t ncol = header.size();
    tab.cells.assign(tab.assets.size(), {});
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != ncol) {
            throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(ncol) +
                             " fields, got " + std::to_string(fields.size()));
        }
        tab.days.push_back(trim(fields[0]));
        for (std::size_t c = 1; c < ncol; ++c) {
            auto v = parse_cell(fields[c], row, c + 1);
            tab.cells[c - 1].push_back(v ? *v : std::numeric_limits<double>::quiet_NaN());
        }
    }
    if (tab.days.empty()) {
        throw ParseError("file has a header but no data rows");
    }
    return tab;
}

} // namespace

PricePanel load_price_csv(const std::filesystem::path& path, const CsvOptions& opt,
                          LoadReport* report) {
    RawTable tab = read_table(path);
    const std::size_t t = tab.days.size();

    LoadReport local;
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < tab.assets.size(); ++a) {
        auto& col = tab.cells[a];
        std::size_t valid = 0;
        for (double v : col) {
            if (!std::isnan(v)) ++valid;
        }
        if (valid <= 1 || std::isnan(col[0])) {
            local.rejected_assets.push_back(tab.assets[a]);
            continue;
        }
        if (opt.forward_fill) {
            for (std::size_t j = 1; j < t; ++j) {
                if (std::isnan(col[j])) {
                    col[j] = col[j - 1];
                    ++local.filled_cells;
                }
            }
        } else {
            for (std::size_t j = 1; j < t; ++j) {
                if (std::isnan(col[j])) {
                    throw DataError("missing price for asset " + tab.assets[a] + " on day " +
                                    tab.days[j] + " (forward fill disabled)");
                }
            }
        }
        for (std::size_t j = 0; j < t; ++j) {
            if (col[j] <= 0.0) {
                throw DataError("non-positive price for asset " + tab.assets[a] + " on day " +
                                tab.days[j]);
            }
        }
        kept.push_back(a);
    }
    if (kept.empty()) {
        throw DataError("no usable assets in '" + path.string() + "'");
    }
    if (t < 2) {
        throw DataError("need at least 2 days of prices in '" + path.string() + "'");
    }

    PricePanel p;
    p.days = tab.days;
    p.prices.resize(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(t));
    for (std::size_t i = 0; i < kept.size(); ++i) {
        p.assets.push_back(tab.assets[kept[i]]);
        for (std::size_t j = 0; j < t; ++j) {
            p.prices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                tab.cells[kept[i]][j];
        }
    }
    if (report) *report = local;
    return p;
}

ReturnPanel load_return_csv(const std::filesystem::path& path) {
    RawTable tab = read_table(path);
    const std::size_t t = tab.days.size();
    ReturnPanel r;
    r.assets = tab.assets;
    r.days = tab.days;
    r.returns.resize(static_cast<Eigen::Index>(tab.assets.size()), static_cast<Eigen::Index>(t));
    for (std::size_t a = 0; a < tab.assets.size(); ++a) {
        for (std::size_t j = 0; j < t; ++j) {
            double v = tab.cells[a][j];
            if (std::isnan(v)) {
                throw DataError("missing return for asset " + tab.assets[a] + " on day " +
                                tab.days[j]);
            }
            if (v <= -1.0) {
                throw DataError("return <= -1 for asset " + tab.assets[a] + " on day " +
                                tab.days[j]);
            }
            r.returns(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j)) = v;
        }
    }
    return r;
}

namespace {

void save_panel(const std::filesystem::path& path, const std::vector<std::string>& assets,
                const std::vector<std::string>& days, const Eigen::MatrixXd& values) {
    std::string out;
    out.reserve(static_cast<std::size_t>(values.size()) * 12 + days.size() * 12);
    out += "day";
    for (const auto& a : assets) {
        out += ',';
        out += a;
    }
    out += '\n';
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        out += days[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            out += ',';
            format_value(out, values(i, j));
        }
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) {
        throw DataError("short write to '" + path.string() + "'");
    }
}

} // namespace

void save_price_csv(const std::filesystem::path& path, const PricePanel& p) {
    save_panel(path, p.assets, p.days, p.prices);
}

void save_return_csv(const std::filesystem::path& path, const ReturnPanel& r) {
    save_panel(path, r.assets, r.days, r.returns);
}

} // namespace scengen
