#ifndef INFECT_TESTS_SUPPORT_HPP
#define INFECT_TESTS_SUPPORT_HPP

// Test-only reference computations. Nothing here calls the estimator, the
// power iteration or the characteristic-polynomial oracle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include <infect/graph.hpp>

namespace infect::test {

/// Dense copy of A built entry by entry from the edge list.
inline Eigen::MatrixXd dense(const Graph &g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const Edge &e : g.edges())
        a(static_cast<Eigen::Index>(e.dst), static_cast<Eigen::Index>(e.src)) += e.weight;
    return a;
}

/// Eigenvalues from Eigen's Hessenberg-QR solver.
inline std::vector<std::complex<double>> qr_eigenvalues(const Graph &g) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(dense(g), false);
    const Eigen::VectorXcd values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

inline double qr_spectral_radius(const Graph &g) {
    double rho = 0.0;
    for (const auto &v : qr_eigenvalues(g))
        rho = std::max(rho, std::abs(v));
    return rho;
}

/// Distance from `target` to the nearest entry of `values`.
inline double nearest(const std::vector<std::complex<double>> &values, std::complex<double> target) {
    double best = INFINITY;
    for (const auto &v : values)
        best = std::min(best, std::abs(v - target));
    return best;
}

inline std::vector<double> random_vector(std::mt19937_64 &rng, std::size_t n, double lo = 0.0,
                                         double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> x(n);
    for (double &v : x)
        v = dist(rng);
    return x;
}

inline std::vector<NodeId> random_permutation(std::mt19937_64 &rng, std::size_t n) {
    std::vector<NodeId> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

inline double relative_error(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

} // namespace infect::test

#endif
