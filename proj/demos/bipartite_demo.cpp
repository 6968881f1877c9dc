// Infection estimate vs. power iteration on K_{2,4}, whose spectrum contains
// both +2sqrt(2) and -2sqrt(2).
#include <cstdio>

#include <infect/infect.hpp>

int main() {
    const infect::Graph g = infect::generate(infect::CompleteBipartite{2, 4});

    const infect::EigenEstimate ours = infect::estimate(g, {});
    const infect::EigenEstimate power = infect::power_iterate(g, {});

    std::printf("%-10s %-20s %-8s %s\n", "method", "status", "steps", "lambda");
    std::printf("%-10s %-20s %-8zu %.12f\n", "infection", infect::to_string(ours.status).data(),
                ours.steps_taken, ours.lambda);
    std::printf("%-10s %-20s %-8zu %.12f\n", "power", infect::to_string(power.status).data(),
                power.steps_taken, power.lambda);

    std::printf("\nfirst ten infection steps:\n");
    for (std::size_t k = 0; k < 10 && k < ours.trace.size(); ++k) {
        const infect::TraceRecord &r = ours.trace[k];
        std::printf("  step %2zu  I = %.6f  m = %.6f  lambda = %.6f\n", r.step, r.severity_total,
                    r.slope, r.lambda_estimate);
    }
    return 0;
}
