#ifndef INFECT_RESULT_HPP
#define INFECT_RESULT_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "vector_ops.hpp"

namespace infect {

struct AllOnes {};

/// All severity starts on one node.
struct SeedNode {
    NodeId node;
};

/// Initial condition x(0): all-ones, one seeded node, or an explicit non-negative vector.
using InitialSeverity = std::variant<AllOnes, SeedNode, std::vector<double>>;

inline std::vector<double> initial_vector(const InitialSeverity &x0, std::size_t n) {
    struct Visitor {
        std::size_t n;
        std::vector<double> operator()(AllOnes) const { return std::vector<double>(n, 1.0); }
        std::vector<double> operator()(SeedNode s) const {
            if (s.node >= n)
                throw Error(ErrorKind::InvalidConfig,
                            "seed node " + std::to_string(s.node) + " outside graph of size " +
                                std::to_string(n));
            std::vector<double> x(n, 0.0);
            x[s.node] = 1.0;
            return x;
        }
        std::vector<double> operator()(const std::vector<double> &v) const {
            if (v.size() != n)
                throw Error(ErrorKind::DimensionMismatch, "explicit x0 has wrong length");
            bool any = false;
            for (double e : v) {
                if (!std::isfinite(e) || e < 0.0)
                    throw Error(ErrorKind::InvalidConfig, "explicit x0 must be finite and non-negative");
                any = any || e > 0.0;
            }
            if (!any)
                throw Error(ErrorKind::InvalidConfig, "explicit x0 is all zero");
            return v;
        }
    };
    return std::visit(Visitor{n}, x0);
}

/// One row of the per-step convergence trace.
struct TraceRecord {
    std::size_t step;
    double severity_total; // before renormalisation
    double slope;
    double lambda_estimate;
    double angle_to_prev_deg;
};

enum class Status { Converged, MaxStepsExceeded, ZeroSeverity };

constexpr std::string_view to_string(Status s) noexcept {
    switch (s) {
    case Status::Converged: return "converged";
    case Status::MaxStepsExceeded: return "max-steps-exceeded";
    case Status::ZeroSeverity: return "zero-severity";
    }
    return "unknown";
}

struct EigenEstimate {
    double lambda = 0.0;
    std::vector<double> vector; // unit 2-norm
    Status status = Status::MaxStepsExceeded;
    std::size_t steps_taken = 0;
    // First step of the stable window that declared convergence; 0 otherwise.
    std::size_t settled_step = 0;
    double residual = 0.0;
    std::vector<TraceRecord> trace;
    std::string note;
};

/// Observer for normalised iterates; step 0 is the normalised starting vector.
using IterateObserver = std::function<void(std::size_t step, std::span<const double> iterate)>;

/// ||A v - lambda v||_2.
inline double eigen_residual(const Graph &g, std::span<const double> v, double lambda) {
    std::vector<double> av = matvec(g, v);
    for (std::size_t i = 0; i < av.size(); ++i)
        av[i] -= lambda * v[i];
    return norm2(av);
}

namespace detail {

// Explains a run that hit the step cap, based on the tail of its trace.
inline std::string diagnose_nonconvergence(std::span<const TraceRecord> trace) {
    constexpr std::size_t window = 50;
    if (trace.size() < 3)
        return "step limit reached before a stable window could form";
    const std::size_t first = trace.size() > window ? trace.size() - window : 1;

    std::size_t flat = 0;
    std::size_t sign_changes = 0;
    int prev_sign = 0;
    for (std::size_t k = first; k < trace.size(); ++k) {
        const double d = trace[k].lambda_estimate - trace[k - 1].lambda_estimate;
        const int s = (d > 0.0) - (d < 0.0);
        if (s == 0) {
            ++flat;
            continue;
        }
        if (prev_sign != 0 && s != prev_sign)
            ++sign_changes;
        prev_sign = s;
    }
    if (flat == 0 && sign_changes == 0)
        return "lambda estimate drifts monotonically without settling; the dominant eigenvalue "
               "may be defective or the growth polynomial rather than exponential";
    if (sign_changes >= 2)
        return "iterates oscillate between directions; several eigenvalues share the dominant "
               "modulus";
    return "no stable window within the step limit";
}

} // namespace detail

} // namespace infect

#endif
