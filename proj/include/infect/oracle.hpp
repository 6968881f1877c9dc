#ifndef INFECT_ORACLE_HPP
#define INFECT_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "graph.hpp"

// Dense, desk-scale spectral reference used to check the iterative solvers.
// Computes eigenvalues from the characteristic polynomial and never calls
// either iterative method.

namespace infect::oracle {

using Complex = std::complex<double>;

inline constexpr std::size_t max_dense_size = 64;

inline Eigen::MatrixXd to_dense(const Graph &g) {
    if (g.size() > max_dense_size)
        throw Error(ErrorKind::TooLarge, "dense oracle limited to " +
                                             std::to_string(max_dense_size) + " nodes, got " +
                                             std::to_string(g.size()));
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    g.for_each_entry([&](NodeId row, NodeId col, double w) {
        a(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = w;
    });
    return a;
}

/**
 * Monic characteristic polynomial det(lambda I - A) by the Faddeev-LeVerrier
 * trace recursion. Coefficients run from the leading power down: result[0]
 * is 1 and result[n] the constant term.
 */
inline std::vector<double> char_poly(const Graph &g) {
    const Eigen::MatrixXd a = to_dense(g);
    const Eigen::Index n = a.rows();
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
    coeffs[0] = 1.0;

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m;
        m.diagonal().array() += coeffs[static_cast<std::size_t>(k - 1)];
        coeffs[static_cast<std::size_t>(k)] = -(a * m).trace() / static_cast<double>(k);
    }
    return coeffs;
}

namespace detail {

struct Evaluation {
    Complex value;
    double scale; // sum |c_i| |z|^i, the rounding-error yardstick
};

inline Evaluation evaluate(const std::vector<double> &coeffs, Complex z) {
    Complex value = 0.0;
    double scale = 0.0;
    const double r = std::abs(z);
    for (double c : coeffs) {
        value = value * z + c;
        scale = scale * r + std::abs(c);
    }
    return {value, scale};
}

inline double backward_error(const std::vector<double> &coeffs, Complex z) {
    const Evaluation e = evaluate(coeffs, z);
    return e.scale > 0.0 ? std::abs(e.value) / e.scale : std::abs(e.value);
}

/// Weierstrass (Durand-Kerner) sweeps from a rotated circle of starting points.
inline bool durand_kerner(const std::vector<double> &coeffs, double start_angle,
                          std::vector<Complex> &roots) {
    constexpr double target = 1e-12;
    constexpr int max_sweeps = 5000;
    constexpr int polish_sweeps = 8;

    const std::size_t degree = coeffs.size() - 1;
    double radius = 0.0;
    for (std::size_t k = 1; k <= degree; ++k)
        radius = std::max(radius, std::pow(std::abs(coeffs[k]), 1.0 / static_cast<double>(k)));
    radius = 2.0 * std::max(radius, 1e-3);

    roots.resize(degree);
    for (std::size_t i = 0; i < degree; ++i)
        roots[i] = std::polar(radius, start_angle + 2.0 * std::numbers::pi * static_cast<double>(i) /
                                                        static_cast<double>(degree));

    auto sweep = [&] {
        for (std::size_t i = 0; i < degree; ++i) {
            Complex denom = 1.0;
            for (std::size_t j = 0; j < degree; ++j)
                if (j != i)
                    denom *= roots[i] - roots[j];
            if (denom == Complex(0.0))
                denom = Complex(1e-300);
            roots[i] -= evaluate(coeffs, roots[i]).value / denom;
        }
    };
    auto converged = [&] {
        for (const Complex &z : roots)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
                backward_error(coeffs, z) > target)
                return false;
        return true;
    };

    for (int s = 0; s < max_sweeps; ++s) {
        sweep();
        if (converged()) {
            for (int p = 0; p < polish_sweeps; ++p)
                sweep();
            return converged();
        }
    }
    return false;
}

} // namespace detail

/**
 * All roots (with multiplicity) of a monic polynomial given leading power
 * first. Exact zero trailing coefficients are split off as zero roots; the
 * rest go through Durand-Kerner, restarted from a randomly rotated circle
 * when the sweep budget runs out.
 */
inline std::vector<Complex> poly_roots(std::vector<double> coeffs) {
    if (coeffs.size() < 2)
        throw Error(ErrorKind::InvalidParams, "polynomial must have degree >= 1");
    if (coeffs[0] != 1.0)
        throw Error(ErrorKind::InvalidParams, "polynomial must be monic");

    std::vector<Complex> roots;
    while (coeffs.size() > 1 && coeffs.back() == 0.0) {
        coeffs.pop_back();
        roots.emplace_back(0.0, 0.0);
    }
    if (coeffs.size() == 1)
        return roots;

    std::mt19937_64 rng(0x5eedu);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> found;
    double start = 0.4;
    constexpr int attempts = 6;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (detail::durand_kerner(coeffs, start, found)) {
            roots.insert(roots.end(), found.begin(), found.end());
            return roots;
        }
        start = angle(rng);
    }
    throw Error(ErrorKind::NoConvergence, "Durand-Kerner did not reach the residual target for a "
                                          "degree-" + std::to_string(coeffs.size() - 1) +
                                              " polynomial");
}

/// Root cluster: centre and number of roots merged into it.
struct Cluster {
    Complex center;
    std::size_t multiplicity;
};

struct SpectrumReport {
    std::vector<Complex> roots;     // n roots with multiplicity
    double perron_root = 0.0;       // largest real non-negative root
    std::vector<Cluster> clusters;  // by decreasing modulus
    double gap = 0.0;               // |lambda_1| - |lambda_2| over distinct clusters
    double cluster_tol = 1e-6;

    /// Multiplicity of the cluster nearest `value`, or 0 if none lies within cluster_tol.
    std::size_t multiplicity_near(Complex value) const {
        for (const Cluster &c : clusters)
            if (std::abs(c.center - value) <= cluster_tol)
                return c.multiplicity;
        return 0;
    }
};

inline SpectrumReport spectrum(const Graph &g, double cluster_tol = 1e-6) {
    SpectrumReport report;
    report.cluster_tol = cluster_tol;
    report.roots = poly_roots(char_poly(g));
    for (Complex &r : report.roots)
        if (std::abs(r.imag()) < cluster_tol)
            r = Complex(r.real(), 0.0);

    // Single-linkage grouping under cluster_tol.
    const std::size_t n = report.roots.size();
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i)
        label[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (label[i] != label[j] &&
                    std::abs(report.roots[i] - report.roots[j]) <= cluster_tol) {
                    const std::size_t keep = std::min(label[i], label[j]);
                    label[i] = label[j] = keep;
                    changed = true;
                }
    }
    for (std::size_t root_label = 0; root_label < n; ++root_label) {
        Complex sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (label[i] == root_label) {
                sum += report.roots[i];
                ++count;
            }
        if (count > 0)
            report.clusters.push_back({sum / static_cast<double>(count), count});
    }
    std::sort(report.clusters.begin(), report.clusters.end(), [](const Cluster &a, const Cluster &b) {
        const double ma = std::abs(a.center), mb = std::abs(b.center);
        if (ma != mb)
            return ma > mb;
        return std::arg(a.center) < std::arg(b.center);
    });

    for (const Cluster &c : report.clusters)
        if (std::abs(c.center.imag()) < cluster_tol && c.center.real() > -cluster_tol)
            report.perron_root = std::max(report.perron_root, std::max(c.center.real(), 0.0));
    if (report.clusters.size() >= 2)
        report.gap = std::abs(report.clusters[0].center) - std::abs(report.clusters[1].center);
    else
        report.gap = std::abs(report.clusters[0].center);
    return report;
}

/// Non-negative, unit 1-norm eigenvector for the Perron root (smallest singular vector
/// of A - rho I). Requires the Perron root to be simple.
inline std::vector<double> perron_vector(const Graph &g, const SpectrumReport &report) {
    if (report.multiplicity_near(report.perron_root) != 1)
        throw Error(ErrorKind::DegenerateStationary, "Perron root is not simple");
    Eigen::MatrixXd shifted = to_dense(g);
    shifted.diagonal().array() -= report.perron_root;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(shifted.cols() - 1);
    if (v.sum() < 0.0)
        v = -v;
    std::vector<double> out(static_cast<std::size_t>(v.size()));
    double total = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[static_cast<std::size_t>(i)] = std::max(v(i), 0.0);
        total += out[static_cast<std::size_t>(i)];
    }
    for (double &e : out)
        e /= total;
    return out;
}

inline std::vector<double> perron_vector(const Graph &g) { return perron_vector(g, spectrum(g)); }

/**
 * Stationary distribution of a column-stochastic chain: solves (A - I) pi = 0
 * together with the appended row sum(pi) = 1 in the least-squares sense.
 */
inline std::vector<double> stationary_vector(const Graph &g) {
    const std::vector<double> sums = g.out_weights();
    for (std::size_t j = 0; j < sums.size(); ++j)
        if (std::abs(sums[j] - 1.0) > 1e-12)
            throw Error(ErrorKind::NonStochastic,
                        "column " + std::to_string(j) + " sums to " + std::to_string(sums[j]));

    const SpectrumReport report = spectrum(g);
    if (report.multiplicity_near(1.0) != 1)
        throw Error(ErrorKind::DegenerateStationary,
                    "eigenvalue 1 has multiplicity " +
                        std::to_string(report.multiplicity_near(1.0)));

    const Eigen::MatrixXd a = to_dense(g);
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd system(n + 1, n);
    system.topRows(n) = a - Eigen::MatrixXd::Identity(n, n);
    system.row(n).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs(n) = 1.0;
    const Eigen::VectorXd pi = system.colPivHouseholderQr().solve(rhs);

    std::vector<double> out(static_cast<std::size_t>(n));
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = std::max(pi(i), 0.0);
        total += out[static_cast<std::size_t>(i)];
    }
    for (double &e : out)
        e /= total;
    return out;
}

} // namespace infect::oracle

#endif
