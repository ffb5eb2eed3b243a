#include "scengen/synthesis.hpp"

#include <stdexcept>
#include <string>

#include "scengen/error.hpp"

namespace scengen {

namespace {

void check_library(const TrendLibrary& lib) {
    bool up = false, down = false;
    for (const auto& t : lib.trends) {
        if (t.windows.empty())
            throw std::invalid_argument("trend library has a trend with no windows");
        (t.sign == TrendSign::upward ? up : down) = true;
    }
    if (!up || !down)
        throw std::invalid_argument("trend library needs at least one trend of each sign");
}

} // namespace

TrendSequence hypothesize_trend_sequence(const TrendLibrary& lib, Eigen::Index target_days,
                                         FirstSign first_sign, RngStream& rng) {
    if (target_days < 1)
        throw std::invalid_argument("hypothesize_trend_sequence: target_days must be >= 1");
    check_library(lib);

    std::vector<Eigen::Index> ups, downs;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(lib.trends.size()); ++i)
        (lib.trends[static_cast<size_t>(i)].sign == TrendSign::upward ? ups : downs).push_back(i);

    TrendSign sign;
    switch (first_sign) {
    case FirstSign::upward: sign = TrendSign::upward; break;
    case FirstSign::downward: sign = TrendSign::downward; break;
    default: sign = rng.uniform() < 0.5 ? TrendSign::upward : TrendSign::downward; break;
    }

    TrendSequence seq;
    Eigen::Index days = 0;
    while (days < target_days) {
        const auto& pool = sign == TrendSign::upward ? ups : downs;
        Eigen::Index pick = pool[rng.uniform_int(static_cast<uint64_t>(pool.size()))];
        seq.push_back({pick, sign});
        days += lib.trends[static_cast<size_t>(pick)].day_count();
        sign = sign == TrendSign::upward ? TrendSign::downward : TrendSign::upward;
    }
    return seq;
}

Eigen::MatrixXd sample_window(const WindowParams& p, RngStream& rng) {
    const Eigen::Index k = p.factor.cols();
    Eigen::MatrixXd z(k, p.window_len);
    for (Eigen::Index j = 0; j < p.window_len; ++j)
        for (Eigen::Index i = 0; i < k; ++i)
            z(i, j) = rng.normal();
    Eigen::MatrixXd out = p.factor * z;
    out.colwise() += p.mu;
    return out;
}

ReturnPanel synthesize_scenario(const TrendLibrary& lib, const ScenarioSpec& spec,
                                TrendSequence* sequence_out) {
    if (spec.target_days < 1)
        throw std::invalid_argument("synthesize_scenario: target_days must be >= 1");
    check_library(lib);

    TrendSequence seq;
    if (!spec.forced_sequence.empty()) {
        Eigen::Index days = 0;
        for (size_t i = 0; i < spec.forced_sequence.size(); ++i) {
            Eigen::Index idx = spec.forced_sequence[i];
            if (idx < 0 || idx >= static_cast<Eigen::Index>(lib.trends.size()))
                throw std::invalid_argument("forced sequence entry " + std::to_string(i) +
                                            " out of range");
            TrendSign sign = lib.trends[static_cast<size_t>(idx)].sign;
            if (i > 0 && sign == seq.back().sign)
                throw std::invalid_argument("forced sequence entries " + std::to_string(i - 1) +
                                            " and " + std::to_string(i) + " do not alternate sign");
            seq.push_back({idx, sign});
            days += lib.trends[static_cast<size_t>(idx)].day_count();
        }
        if (days < spec.target_days)
            throw std::invalid_argument("forced sequence covers " + std::to_string(days) +
                                        " days, fewer than target " +
                                        std::to_string(spec.target_days));
    } else {
        RngStream seq_rng = RngStream::substream(spec.seed, 0);
        seq = hypothesize_trend_sequence(lib, spec.target_days, spec.first_sign, seq_rng);
    }
    if (sequence_out)
        *sequence_out = seq;

    const Eigen::Index s = lib.asset_count();
    ReturnPanel out;
    out.assets = lib.assets;
    out.returns.resize(s, spec.target_days);

    Eigen::Index filled = 0;
    for (size_t i = 0; i < seq.size() && filled < spec.target_days; ++i) {
        RngStream rng = RngStream::substream(spec.seed, static_cast<uint64_t>(i) + 1);
        const auto& trend = lib.trends[static_cast<size_t>(seq[i].library_index)];
        for (const auto& w : trend.windows) {
            Eigen::MatrixXd block = sample_window(w, rng);
            Eigen::Index take = std::min(block.cols(), spec.target_days - filled);
            if (take > 0)
                out.returns.middleCols(filled, take) = block.leftCols(take);
            filled += take;
            if (filled >= spec.target_days)
                break;
        }
    }

    out.days.resize(static_cast<size_t>(spec.target_days));
    for (Eigen::Index t = 0; t < spec.target_days; ++t)
        out.days[static_cast<size_t>(t)] = "d" + std::to_string(t + 1);
    return out;
}

} // namespace scengen
