#pragma once

#include <span>
#include <vector>

#include "scengen/error.hpp"
#include "scengen/rng.hpp"

namespace scengen {

struct GbmParams {
    double mu = 0.0;    // drift per day
    double sigma = 0.0; // volatility per day, >= 0
};

// mu = sample mean, sigma = unbiased sample standard deviation.
GbmParams fit_gbm(std::span<const double> returns);

// r_t = mu + sigma * z_t (discrete-time Euler form).
std::vector<double> simulate_gbm(const GbmParams& p, long t, RngStream& rng);

enum class Innovation { gaussian, student_t };

struct GarchParams {
    double omega = 0.0; // > 0
    double alpha = 0.0; // >= 0
    double beta = 0.0;  // >= 0, alpha + beta < 1
    double mean = 0.0;
    Innovation innovation = Innovation::gaussian;
    double nu = 8.0; // Student-t dof, > 2; ignored for gaussian

    double unconditional_variance() const { return omega / (1.0 - alpha - beta); }
};

struct GarchFit {
    GarchParams params;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct GarchFitOptions {
    int max_iterations = 500;
    double tol = 1e-8; // stop when the log-likelihood gain drops below this
};

// Thrown when the optimizer hits max_iterations; carries the best
// iterate found so far.
class GarchFitError : public DataError {
  public:
    GarchFitError(const std::string& what, GarchFit best_so_far)
        : DataError(what), best(std::move(best_so_far)) {}
    GarchFit best;
};

// Maximum likelihood over unconstrained transformed parameters
// (log omega; logistic simplex keeping alpha + beta < 1; log(nu - 2)).
// The mean is held at the sample mean. sigma^2_0 seeds the recursion at
// the sample variance.
GarchFit fit_garch11(std::span<const double> returns, Innovation innovation,
                     const GarchFitOptions& opt = {});

// Variance recursion seeded at the unconditional variance; Student-t
// innovations are scaled by sqrt((nu-2)/nu) so the conditional variance
// is sigma_t^2 for either innovation choice.
std::vector<double> simulate_garch11(const GarchParams& p, long t, RngStream& rng);

} // namespace scengen
