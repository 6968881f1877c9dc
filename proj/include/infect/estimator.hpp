#ifndef INFECT_ESTIMATOR_HPP
#define INFECT_ESTIMATOR_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "result.hpp"
#include "vector_ops.hpp"

namespace infect {

/**
 * Settings for the infection-dynamics estimator.
 *
 * `beta` is the infection rate and `dt` the Euler step. Convergence is
 * declared once `stable_window` consecutive steps change the eigenvalue
 * estimate by at most `tol_lambda * max(1, |lambda|)` and move the iterate by
 * at most `tol_angle` degrees.
 */
struct EstimatorConfig {
    double beta = 1.0;
    double dt = 1.0;
    InitialSeverity x0 = AllOnes{};
    double tol_lambda = 1e-10;
    double tol_angle = 1e-8;
    std::size_t stable_window = 5;
    std::size_t max_steps = 10'000;

    void validate() const {
        auto require = [](bool ok, const char *what) {
            if (!ok)
                throw Error(ErrorKind::InvalidConfig, what);
        };
        require(std::isfinite(beta) && beta > 0.0, "beta must be positive");
        require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
        require(tol_lambda > 0.0, "tol_lambda must be positive");
        require(tol_angle > 0.0, "tol_angle must be positive");
        require(stable_window >= 1, "stable_window must be at least 1");
        require(max_steps >= 1, "max_steps must be at least 1");
    }
};

/// x + beta dt A x, the explicit Euler step of dx/dt = beta A x.
inline std::vector<double> euler_step(const Graph &g, std::span<const double> x, double beta,
                                      double dt) {
    std::vector<double> y = matvec(g, x);
    const double h = beta * dt;
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = x[i] + h * y[i];
    return y;
}

/// Slope of the secant through (t, ln before) and (t + dt, ln after).
inline double secant_slope(double severity_before, double severity_after, double dt) {
    if (!(severity_before > 0.0) || !(severity_after > 0.0))
        throw Error(ErrorKind::NonpositiveSeverity,
                    "log-severity secant needs positive totals, got " +
                        std::to_string(severity_before) + " and " + std::to_string(severity_after));
    return (std::log(severity_after) - std::log(severity_before)) / dt;
}

/// Inverts the Euler growth factor: lambda = (e^{m dt} - 1) / (beta dt).
inline double lambda_from_slope(double slope, double beta, double dt) {
    return std::expm1(slope * dt) / (beta * dt);
}

/**
 * Dominant eigenpair of a non-negative matrix from the infection dynamics
 * x <- (I + beta dt A) x.
 *
 * The state is rescaled to total severity one after every step, so the
 * secant slope reduces to ln(I) / dt with I the pre-rescale total. Only
 * products with A are needed. `observer`, if set, sees every rescaled
 * iterate, starting with x(0).
 */
inline EigenEstimate estimate(const Graph &g, const EstimatorConfig &cfg,
                              const IterateObserver &observer = {}) {
    cfg.validate();
    const std::size_t n = g.size();
    const double h = cfg.beta * cfg.dt;

    std::vector<double> x = initial_vector(cfg.x0, n);
    scale_in_place(x, 1.0 / total_severity(x));
    if (observer)
        observer(0, x);

    EigenEstimate result;
    result.trace.reserve(std::min<std::size_t>(cfg.max_steps, 4096));
    std::vector<double> ax(n);
    std::vector<double> next(n);
    double prev_lambda = 0.0;
    double lambda = 0.0;
    std::size_t streak = 0;

    for (std::size_t step = 1; step <= cfg.max_steps; ++step) {
        g.multiply(x, ax);
        for (std::size_t i = 0; i < n; ++i)
            next[i] = x[i] + h * ax[i];

        const double total = total_severity(next);
        if (!(total > 0.0))
            throw Error(ErrorKind::ZeroSeverity,
                        "total severity vanished at step " + std::to_string(step));
        if (!std::isfinite(total))
            throw Error(ErrorKind::NonFiniteSeverity,
                        "total severity overflowed at step " + std::to_string(step));

        const double slope = secant_slope(1.0, total, cfg.dt);
        lambda = lambda_from_slope(slope, cfg.beta, cfg.dt);
        scale_in_place(next, 1.0 / total);
        const double angle = angle_deg(next, x);
        result.trace.push_back({step, total, slope, lambda, angle});

        const bool stable = step > 1 &&
                            std::abs(lambda - prev_lambda) <=
                                cfg.tol_lambda * std::max(1.0, std::abs(lambda)) &&
                            angle <= cfg.tol_angle;
        streak = stable ? streak + 1 : 0;

        x.swap(next);
        prev_lambda = lambda;
        result.steps_taken = step;
        if (observer)
            observer(step, x);
        if (streak >= cfg.stable_window) {
            result.status = Status::Converged;
            result.settled_step = step - cfg.stable_window + 1;
            break;
        }
    }

    result.lambda = lambda;
    result.vector = unit_2norm(x);
    result.residual = eigen_residual(g, result.vector, lambda);
    if (result.status != Status::Converged)
        result.note = detail::diagnose_nonconvergence(result.trace);
    return result;
}

} // namespace infect

#endif
