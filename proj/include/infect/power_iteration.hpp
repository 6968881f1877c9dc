#ifndef INFECT_POWER_ITERATION_HPP
#define INFECT_POWER_ITERATION_HPP

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "result.hpp"
#include "vector_ops.hpp"

namespace infect {

struct PowerConfig {
    InitialSeverity x0 = AllOnes{};
    std::size_t max_steps = 10'000;
    double tol_angle = 1e-8;
    std::size_t stable_window = 5;

    void validate() const {
        if (!(tol_angle > 0.0))
            throw Error(ErrorKind::InvalidConfig, "tol_angle must be positive");
        if (stable_window < 1)
            throw Error(ErrorKind::InvalidConfig, "stable_window must be at least 1");
        if (max_steps < 1)
            throw Error(ErrorKind::InvalidConfig, "max_steps must be at least 1");
    }
};

/**
 * Classical power iteration x <- A x / ||A x||_2.
 *
 * The eigenvalue estimate is the growth ratio ||A x||_2 of the unit iterate;
 * the trace `slope` is its logarithm. Converged once `stable_window`
 * consecutive iterates move by at most `tol_angle` degrees.
 */
inline EigenEstimate power_iterate(const Graph &g, const PowerConfig &cfg,
                                   const IterateObserver &observer = {}) {
    cfg.validate();
    const std::size_t n = g.size();

    std::vector<double> x = unit_2norm(initial_vector(cfg.x0, n));
    if (observer)
        observer(0, x);

    EigenEstimate result;
    std::vector<double> next(n);
    double lambda = 0.0;
    std::size_t streak = 0;

    for (std::size_t step = 1; step <= cfg.max_steps; ++step) {
        g.multiply(x, next);
        const double growth = norm2(next);
        if (!(growth > 0.0))
            throw Error(ErrorKind::ZeroVector,
                        "iterate annihilated at step " + std::to_string(step));
        const double total = total_severity(next);
        lambda = growth;
        scale_in_place(next, 1.0 / growth);
        const double angle = angle_deg(next, x);
        result.trace.push_back({step, total, std::log(growth), lambda, angle});

        streak = angle <= cfg.tol_angle ? streak + 1 : 0;
        x.swap(next);
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
    result.vector = x;
    result.residual = eigen_residual(g, result.vector, lambda);
    if (result.status != Status::Converged)
        result.note = detail::diagnose_nonconvergence(result.trace);
    return result;
}

} // namespace infect

#endif
