#include "scengen/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace scengen {

GbmParams fit_gbm(std::span<const double> returns) {
    const size_t n = returns.size();
    if (n < 2)
        throw std::invalid_argument("fit_gbm: need at least 2 observations");
    double mean = 0;
    for (double v : returns) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0;
    for (double v : returns) ss += (v - mean) * (v - mean);
    // a constant series is degenerate even if centering leaves rounding dust
    if (ss <= 0.0 || std::all_of(returns.begin(), returns.end(),
                                 [&](double v) { return v == returns[0]; }))
        throw DataError("fit_gbm: degenerate series");
    return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

std::vector<double> simulate_gbm(const GbmParams& p, long t, RngStream& rng) {
    if (t < 1)
        throw std::invalid_argument("simulate_gbm: T must be >= 1");
    if (p.sigma < 0.0)
        throw std::invalid_argument("simulate_gbm: sigma must be >= 0");
    std::vector<double> out(static_cast<size_t>(t));
    for (auto& v : out) v = p.mu + p.sigma * rng.normal();
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Transformed parameter vector: [log omega, a, b] (+ [log(nu-2)]) with
// alpha = e^a/(1+e^a+e^b), beta = e^b/(1+e^a+e^b).
struct GarchModel {
    std::span<const double> r;
    double mean;
    double seed_var; // sigma^2_0 for the likelihood recursion
    Innovation innovation;

    int dim() const { return innovation == Innovation::student_t ? 4 : 3; }

    GarchParams decode(const Eigen::VectorXd& p) const {
        GarchParams g;
        g.omega = std::exp(p[0]);
        const double ea = std::exp(p[1]);
        const double eb = std::exp(p[2]);
        const double denom = 1.0 + ea + eb;
        g.alpha = ea / denom;
        g.beta = eb / denom;
        g.mean = mean;
        g.innovation = innovation;
        if (innovation == Innovation::student_t)
            g.nu = 2.0 + std::exp(p[3]);
        return g;
    }

    // Negative log-likelihood; +inf on numerical failure rejects a step.
    double nll(const Eigen::VectorXd& p) const {
        const GarchParams g = decode(p);
        if (!std::isfinite(g.omega) || g.omega <= 0.0)
            return kInf;
        double ll = 0.0;
        if (innovation == Innovation::gaussian) {
            const double c = -0.5 * std::log(2.0 * M_PI);
            double var = seed_var;
            for (size_t t = 0; t < r.size(); ++t) {
                if (t > 0) {
                    const double e = r[t - 1] - g.mean;
                    var = g.omega + g.alpha * e * e + g.beta * var;
                }
                const double e = r[t] - g.mean;
                ll += c - 0.5 * std::log(var) - 0.5 * e * e / var;
            }
        } else {
            const double nu = g.nu;
            const double c = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                             0.5 * std::log(M_PI * (nu - 2.0));
            double var = seed_var;
            for (size_t t = 0; t < r.size(); ++t) {
                if (t > 0) {
                    const double e = r[t - 1] - g.mean;
                    var = g.omega + g.alpha * e * e + g.beta * var;
                }
                const double z2 = (r[t] - g.mean) * (r[t] - g.mean) / var;
                ll += c - 0.5 * std::log(var) -
                      0.5 * (nu + 1.0) * std::log1p(z2 / (nu - 2.0));
            }
        }
        return std::isfinite(ll) ? -ll : kInf;
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& p) const {
        const double h = 1e-6;
        Eigen::VectorXd g(p.size());
        Eigen::VectorXd q = p;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            q[i] = p[i] + h;
            const double fp = nll(q);
            q[i] = p[i] - h;
            const double fm = nll(q);
            q[i] = p[i];
            g[i] = (fp - fm) / (2.0 * h);
        }
        return g;
    }
};

} // namespace

GarchFit fit_garch11(std::span<const double> returns, Innovation innovation,
                     const GarchFitOptions& opt) {
    if (returns.size() < 10)
        throw std::invalid_argument("fit_garch11: need at least 10 observations");

    double mean = 0;
    for (double v : returns) mean += v;
    mean /= static_cast<double>(returns.size());
    double var = 0;
    for (double v : returns) var += (v - mean) * (v - mean);
    var /= static_cast<double>(returns.size());
    if (var <= 0.0 || std::all_of(returns.begin(), returns.end(),
                                  [&](double v) { return v == returns[0]; }))
        throw DataError("fit_garch11: degenerate series");

    GarchModel model{returns, mean, var, innovation};
    const int dim = model.dim();

    // omega = 0.1*var, alpha = 0.05, beta = 0.90 (nu = 8).
    Eigen::VectorXd x(dim);
    x[0] = std::log(0.1 * var);
    x[1] = 0.0;
    x[2] = std::log(18.0);
    if (dim == 4)
        x[3] = std::log(6.0);

    double fx = model.nll(x);
    if (!std::isfinite(fx))
        throw DataError("fit_garch11: likelihood undefined at starting point");
    Eigen::VectorXd g = model.gradient(x);
    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(dim, dim);

    auto make_fit = [&](int iters, bool conv) {
        GarchFit fit;
        fit.params = model.decode(x);
        fit.log_likelihood = -fx;
        fit.iterations = iters;
        fit.converged = conv;
        return fit;
    };

    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        Eigen::VectorXd dir = -(h_inv * g);
        if (dir.dot(g) >= 0.0) { // not a descent direction: reset
            h_inv.setIdentity();
            dir = -g;
        }

        // Armijo backtracking.
        double step = 1.0;
        const double slope = dir.dot(g);
        double f_new = kInf;
        Eigen::VectorXd x_new;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = x + step * dir;
            f_new = model.nll(x_new);
            if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved)
            return make_fit(iter, true); // no improving step left: at optimum

        const double gain = fx - f_new;
        Eigen::VectorXd g_new = model.gradient(x_new);
        Eigen::VectorXd s = x_new - x;
        Eigen::VectorXd y = g_new - g;
        const double ys = y.dot(s);
        if (ys > 1e-12) {
            const double rho = 1.0 / ys;
            Eigen::MatrixXd i_mat = Eigen::MatrixXd::Identity(dim, dim);
            h_inv = (i_mat - rho * s * y.transpose()) * h_inv *
                        (i_mat - rho * y * s.transpose()) +
                    rho * s * s.transpose();
        }
        x = x_new;
        fx = f_new;
        g = g_new;
        if (gain < opt.tol)
            return make_fit(iter, true);
    }
    throw GarchFitError("fit_garch11: no convergence after " +
                            std::to_string(opt.max_iterations) + " iterations",
                        make_fit(opt.max_iterations, false));
}

std::vector<double> simulate_garch11(const GarchParams& p, long t, RngStream& rng) {
    if (t < 1)
        throw std::invalid_argument("simulate_garch11: T must be >= 1");
    if (!(p.omega > 0.0) || p.alpha < 0.0 || p.beta < 0.0 || p.alpha + p.beta >= 1.0)
        throw std::invalid_argument("simulate_garch11: invalid parameters");
    if (p.innovation == Innovation::student_t && !(p.nu > 2.0))
        throw std::invalid_argument("simulate_garch11: Student-t needs nu > 2");

    std::vector<double> out(static_cast<size_t>(t));
    double var = p.unconditional_variance();
    const double t_scale =
        p.innovation == Innovation::student_t ? std::sqrt((p.nu - 2.0) / p.nu) : 1.0;
    for (size_t i = 0; i < out.size(); ++i) {
        if (i > 0) {
            const double e = out[i - 1] - p.mean;
            var = p.omega + p.alpha * e * e + p.beta * var;
        }
        const double z = p.innovation == Innovation::student_t ? t_scale * rng.student_t(p.nu)
                                                               : rng.normal();
        out[i] = p.mean + std::sqrt(var) * z;
    }
    return out;
}

} // namespace scengen
