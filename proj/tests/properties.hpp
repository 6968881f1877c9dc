#ifndef INFECT_TESTS_PROPERTIES_HPP
#define INFECT_TESTS_PROPERTIES_HPP

// Seeded property checks shared by the unit suite and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <infect/infect.hpp>

#include "support.hpp"

namespace infect::test {

struct Check {
    bool ok = true;
    std::string detail;
    std::size_t cases = 0;

    void fail(const std::string &why) {
        if (ok)
            detail = why;
        ok = false;
    }
};

inline std::string describe(std::uint64_t seed, std::size_t n) {
    return "seed " + std::to_string(seed) + " (n=" + std::to_string(n) + ")";
}

/// Random non-negative graph with n in [2, 10] and a seeded density in [0.3, 1].
inline Graph random_graph(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    const std::size_t n = 2 + rng() % 9;
    const double density = 0.3 + 0.7 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return generate(RandomNonneg{n, density, seed});
}

struct GappedCase {
    std::uint64_t seed;
    Graph graph;
    oracle::SpectrumReport spectrum;
};

/// First `count` random graphs whose oracle gap |lambda_1| - |lambda_2| is at least `min_gap`.
inline std::vector<GappedCase> gapped_cases(std::size_t count, double min_gap = 0.1,
                                            std::uint64_t first_seed = 1) {
    std::vector<GappedCase> out;
    for (std::uint64_t seed = first_seed; out.size() < count; ++seed) {
        Graph g = random_graph(seed);
        oracle::SpectrumReport report = oracle::spectrum(g);
        if (report.gap >= min_gap)
            out.push_back({seed, std::move(g), std::move(report)});
    }
    return out;
}

inline Check oracle_agreement(std::size_t count = 100) {
    Check check;
    for (const GappedCase &c : gapped_cases(count)) {
        ++check.cases;
        const EigenEstimate r = estimate(c.graph, {});
        const double rel = relative_error(r.lambda, c.spectrum.perron_root);
        if (r.status != Status::Converged || !(rel <= 1e-6)) {
            std::ostringstream why;
            why << describe(c.seed, c.graph.size()) << ": lambda " << r.lambda << " vs oracle "
                << c.spectrum.perron_root << " (status " << to_string(r.status) << ")";
            check.fail(why.str());
        }
    }
    return check;
}

inline Check residual_certificate(std::size_t count = 50) {
    Check check;
    for (const GappedCase &c : gapped_cases(count)) {
        ++check.cases;
        const EigenEstimate r = estimate(c.graph, {});
        const double bound = 10.0 * std::max(1e-10, 1e-9) * std::max(1.0, r.lambda);
        if (r.status == Status::Converged && r.residual > bound)
            check.fail(describe(c.seed, c.graph.size()) + ": residual " +
                       std::to_string(r.residual));
    }
    return check;
}

inline Check nonnegativity(std::size_t count = 40) {
    Check check;
    for (std::uint64_t seed = 1; seed <= count; ++seed) {
        ++check.cases;
        const Graph g = random_graph(seed);
        std::mt19937_64 rng(seed);
        EstimatorConfig cfg;
        cfg.x0 = random_vector(rng, g.size(), 0.0, 1.0);
        cfg.max_steps = 500;
        bool negative = false;
        const EigenEstimate r = estimate(g, cfg, [&](std::size_t, std::span<const double> x) {
            for (double v : x)
                negative = negative || v < 0.0;
        });
        for (double v : r.vector)
            negative = negative || v < 0.0;
        if (negative)
            check.fail(describe(seed, g.size()) + ": negative severity");
        if (r.lambda < 0.0)
            check.fail(describe(seed, g.size()) + ": negative lambda");
    }
    return check;
}

inline Check scale_equivariance(std::size_t count = 30) {
    Check check;
    for (const GappedCase &c : gapped_cases(count, 0.1, 1000)) {
        const EigenEstimate base = estimate(c.graph, {});
        for (double factor : {0.5, 2.0, 10.0}) {
            ++check.cases;
            const EigenEstimate r = estimate(scaled(c.graph, factor), {});
            const double rel = relative_error(r.lambda, factor * base.lambda);
            const double angle_rad = angle_deg(r.vector, base.vector) * std::numbers::pi / 180.0;
            if (r.status != Status::Converged || !(rel <= 1e-8) || !(angle_rad <= 1e-6)) {
                std::ostringstream why;
                why << describe(c.seed, c.graph.size()) << " x" << factor << ": rel " << rel
                    << ", angle " << angle_rad << " rad";
                check.fail(why.str());
            }
        }
    }
    return check;
}

inline Check step_invariance(std::size_t count = 30) {
    Check check;
    for (const GappedCase &c : gapped_cases(count, 0.1, 2000)) {
        ++check.cases;
        const EigenEstimate coarse = estimate(c.graph, {});
        EstimatorConfig fine_cfg;
        fine_cfg.beta = 0.5;
        fine_cfg.dt = 0.25;
        const EigenEstimate fine = estimate(c.graph, fine_cfg);
        const double rel = relative_error(fine.lambda, coarse.lambda);
        if (fine.status != Status::Converged || !(rel <= 1e-8)) {
            std::ostringstream why;
            why << describe(c.seed, c.graph.size()) << ": " << coarse.lambda << " vs "
                << fine.lambda;
            check.fail(why.str());
        }
    }
    return check;
}

inline Check permutation_equivariance(std::size_t count = 30) {
    Check check;
    for (const GappedCase &c : gapped_cases(count, 0.1, 3000)) {
        ++check.cases;
        std::mt19937_64 rng(c.seed);
        const auto perm = random_permutation(rng, c.graph.size());
        const EigenEstimate base = estimate(c.graph, {});
        const EigenEstimate moved = estimate(permute(c.graph, perm), {});
        if (!(std::abs(moved.lambda - base.lambda) <= 1e-10))
            check.fail(describe(c.seed, c.graph.size()) + ": lambda moved");
        std::vector<double> expected(base.vector.size());
        for (std::size_t v = 0; v < perm.size(); ++v)
            expected[perm[v]] = base.vector[v];
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (!(std::abs(moved.vector[i] - expected[i]) <= 1e-8))
                check.fail(describe(c.seed, c.graph.size()) + ": vector not permuted");
    }
    return check;
}

/// estimate(beta = 1, dt = 1) against power iteration on A + I, compared step by step on
/// unit 2-norm iterates.
inline Check shifted_power_equivalence(std::size_t count = 20, std::size_t steps = 50) {
    Check check;
    for (std::uint64_t seed = 1; seed <= count; ++seed) {
        ++check.cases;
        const Graph g = random_graph(seed + 500);
        std::vector<std::vector<double>> ours;
        std::vector<std::vector<double>> power;

        EstimatorConfig cfg;
        cfg.max_steps = steps;
        cfg.stable_window = steps + 1; // run exactly `steps` steps
        estimate(g, cfg, [&](std::size_t, std::span<const double> x) { ours.push_back(unit_2norm(x)); });

        PowerConfig pcfg;
        pcfg.max_steps = steps;
        pcfg.stable_window = steps + 1;
        power_iterate(add_identity(g), pcfg, [&](std::size_t, std::span<const double> x) {
            power.emplace_back(x.begin(), x.end());
        });

        if (ours.size() != steps + 1 || power.size() != steps + 1) {
            check.fail(describe(seed, g.size()) + ": wrong number of iterates");
            continue;
        }
        double worst = 0.0;
        for (std::size_t k = 0; k <= steps; ++k)
            for (std::size_t i = 0; i < g.size(); ++i)
                worst = std::max(worst, std::abs(ours[k][i] - power[k][i]));
        if (!(worst <= 1e-14)) {
            std::ostringstream why;
            why << describe(seed, g.size()) << ": max entry difference " << worst;
            check.fail(why.str());
        }
    }
    return check;
}

inline Check power_agreement(std::size_t count = 40) {
    Check check;
    for (const GappedCase &c : gapped_cases(count, 0.1, 4000)) {
        ++check.cases;
        const EigenEstimate ours = estimate(c.graph, {});
        const EigenEstimate power = power_iterate(c.graph, {});
        const double rel = relative_error(power.lambda, ours.lambda);
        const double angle = angle_deg(power.vector, ours.vector);
        if (power.status != Status::Converged || !(rel <= 1e-6) || !(angle <= 1e-4)) {
            std::ostringstream why;
            why << describe(c.seed, c.graph.size()) << ": rel " << rel << ", angle " << angle
                << " deg, power status " << to_string(power.status);
            check.fail(why.str());
        }
    }
    return check;
}

inline Check newton_identities(std::size_t count = 40) {
    Check check;
    for (std::uint64_t seed = 1; seed <= count; ++seed) {
        ++check.cases;
        const Graph g = random_graph(seed + 7000);
        const auto report = oracle::spectrum(g);
        const Eigen::MatrixXd a = dense(g);
        std::complex<double> sum = 0.0, product = 1.0;
        for (const auto &r : report.roots) {
            sum += r;
            product *= r;
        }
        const double n = static_cast<double>(g.size());
        const double det = a.determinant();
        if (!(std::abs(sum - a.trace()) <= 1e-8 * n))
            check.fail(describe(seed, g.size()) + ": root sum != trace");
        if (!(std::abs(product - det) <= 1e-8 * std::max(std::abs(det), 1e-3)))
            check.fail(describe(seed, g.size()) + ": root product != det");
        for (const auto &r : report.roots)
            if (!(report.perron_root >= std::abs(r) - 1e-6))
                check.fail(describe(seed, g.size()) + ": root exceeds perron root");
    }
    return check;
}

/// Strictly upper-triangular (acyclic) graphs: lambda decays to zero.
inline Check nilpotent_decay(std::size_t count = 10) {
    Check check;
    for (std::uint64_t seed = 1; seed <= count; ++seed) {
        ++check.cases;
        std::mt19937_64 rng(seed);
        const std::size_t n = 2 + rng() % 5;
        std::vector<Edge> edges;
        for (NodeId src = 0; src < n; ++src)
            for (NodeId dst = src + 1; dst < n; ++dst)
                if (rng() % 2 == 0)
                    edges.push_back({src, dst, 0.5 + static_cast<double>(rng() % 4)});
        const Graph dag(n, edges);
        EstimatorConfig cfg;
        cfg.max_steps = 2'000'000;
        const EigenEstimate r = estimate(dag, cfg);
        if (r.status != Status::Converged || !(r.lambda >= 0.0) || !(r.lambda < 1e-3)) {
            std::ostringstream why;
            why << describe(seed, n) << ": lambda " << r.lambda << ", status "
                << to_string(r.status);
            check.fail(why.str());
        }
    }
    return check;
}

} // namespace infect::test

#endif
