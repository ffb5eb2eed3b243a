#pragma once

#include <cstdint>
#include <random>

namespace scengen {

// Seedable random stream with a fixed, platform-independent sample path.
// All variates are derived from raw mt19937_64 output through explicit
// formulas (no std::*_distribution, whose algorithms are unspecified), so
// a given seed produces bit-identical draws on every standard library.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    // Independent stream for a (seed, ordinal) pair. Parallel and serial
    // consumers that agree on ordinals see identical draws.
    static RngStream substream(std::uint64_t seed, std::uint64_t ordinal);

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal via the inverse CDF.
    double normal();

    // Gamma(shape, scale), shape >= 1 (Marsaglia-Tsang squeeze).
    double gamma(double shape, double scale);

    // Student-t with nu > 2 degrees of freedom (unit scale, not
    // variance-normalized).
    double student_t(double nu);

    // Unbiased integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n);

private:
    std::mt19937_64 eng_;
};

// Inverse of the standard normal CDF (Wichura's AS 241, double precision).
double inverse_normal_cdf(double p);

// SplitMix64 mixing step, used for seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace scengen
