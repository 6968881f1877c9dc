#ifndef INFECT_TOOLS_CLI_HPP
#define INFECT_TOOLS_CLI_HPP

// Command-line front end: estimate, compare and generate.
//
// Exit codes: 0 converged, 2 step limit reached, 1 runtime error, 64 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <infect/infect.hpp>

namespace infect::cli {

inline constexpr int exit_converged = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_not_converged = 2;
inline constexpr int exit_usage = 64;

using nlohmann::json;

/// Options shared by the estimate and compare commands.
struct RunOptions {
    std::string input;
    std::string family;
    bool markov = false;
    std::string dangling = "error";
    std::uint64_t seed = 0;
    double beta = 1.0;
    double dt = 1.0;
    std::string x0 = "ones";
    double tol_lambda = 1e-10;
    double tol_angle = 1e-8;
    std::size_t stable_window = 5;
    std::size_t max_steps = 10'000;
    std::string trace_path;
    std::string output_path;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline DanglingPolicy parse_dangling(const std::string &s) {
    if (s == "error")
        return DanglingPolicy::Error;
    if (s == "self-loop")
        return DanglingPolicy::SelfLoop;
    throw UsageError("--dangling must be 'error' or 'self-loop'");
}

inline InitialSeverity parse_x0(const std::string &s) {
    if (s == "ones")
        return AllOnes{};
    if (s.rfind("seed:", 0) == 0) {
        NodeId node = 0;
        if (!infect::detail::parse_number(std::string_view(s).substr(5), node))
            throw UsageError("--x0 seed:K needs a non-negative integer K");
        return SeedNode{node};
    }
    throw UsageError("--x0 must be 'ones' or 'seed:K'");
}

struct LoadedGraph {
    std::optional<Graph> graph;
    json provenance;
};

inline LoadedGraph load_graph(const RunOptions &opt) {
    LoadedGraph out;
    const DanglingPolicy policy = parse_dangling(opt.dangling);
    if (!opt.input.empty()) {
        std::ifstream in(opt.input);
        if (!in)
            throw Error(ErrorKind::Io, "cannot open '" + opt.input + "'");
        out.graph = load_edge_list(in);
        out.provenance = {{"source", "input"}, {"path", opt.input}};
    } else {
        FamilyParams params;
        try {
            params = parse_family(opt.family, opt.seed);
        } catch (const Error &e) {
            throw UsageError(e.what());
        }
        out.graph = generate(params);
        out.provenance = {{"source", "generate"}, {"family", to_string(params)}, {"seed", opt.seed}};
    }
    if (opt.markov)
        out.graph = markov_normalize(*out.graph, policy);
    out.provenance["markov"] = opt.markov;
    out.provenance["dangling"] = opt.dangling;
    out.provenance["nodes"] = out.graph->size();
    out.provenance["entries"] = out.graph->nnz();
    return out;
}

inline EstimatorConfig estimator_config(const RunOptions &opt) {
    EstimatorConfig cfg;
    cfg.beta = opt.beta;
    cfg.dt = opt.dt;
    cfg.x0 = parse_x0(opt.x0);
    cfg.tol_lambda = opt.tol_lambda;
    cfg.tol_angle = opt.tol_angle;
    cfg.stable_window = opt.stable_window;
    cfg.max_steps = opt.max_steps;
    try {
        cfg.validate();
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    return cfg;
}

inline PowerConfig power_config(const RunOptions &opt) {
    PowerConfig cfg;
    cfg.x0 = parse_x0(opt.x0);
    cfg.tol_angle = opt.tol_angle;
    cfg.stable_window = opt.stable_window;
    cfg.max_steps = opt.max_steps;
    return cfg;
}

inline json config_echo(const RunOptions &opt) {
    return {{"beta", opt.beta},           {"dt", opt.dt},
            {"x0", opt.x0},               {"tol_lambda", opt.tol_lambda},
            {"tol_angle", opt.tol_angle}, {"stable_window", opt.stable_window},
            {"max_steps", opt.max_steps}};
}

/// Argument list that reproduces the run.
inline json rerun_args(const std::string &command, const RunOptions &opt) {
    std::vector<std::string> args{command};
    if (!opt.input.empty())
        args.insert(args.end(), {"--input", opt.input});
    else
        args.insert(args.end(), {"--generate", opt.family, "--seed", std::to_string(opt.seed)});
    if (opt.markov)
        args.insert(args.end(), {"--markov", "--dangling", opt.dangling});
    args.insert(args.end(), {"--beta", format_weight(opt.beta), "--dt", format_weight(opt.dt),
                             "--x0", opt.x0, "--tol-lambda", format_weight(opt.tol_lambda),
                             "--tol-angle", format_weight(opt.tol_angle), "--stable-window",
                             std::to_string(opt.stable_window), "--max-steps",
                             std::to_string(opt.max_steps)});
    return args;
}

inline json result_json(const EigenEstimate &r) {
    json j = {{"lambda", r.lambda},
              {"status", to_string(r.status)},
              {"steps_taken", r.steps_taken},
              {"settled_step", r.settled_step},
              {"residual", r.residual},
              {"vector", r.vector}};
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

/// Reference data for graphs small enough for the dense oracle.
struct OracleSummary {
    json summary;
    std::optional<std::vector<double>> vector;
};

inline OracleSummary oracle_summary(const Graph &g, bool markov) {
    OracleSummary out;
    if (g.size() > oracle::max_dense_size)
        return out;
    try {
        const oracle::SpectrumReport report = oracle::spectrum(g);
        json roots = json::array();
        for (const auto &r : report.roots)
            roots.push_back({r.real(), r.imag()});
        out.summary = {{"perron_root", report.perron_root},
                       {"gap", report.gap},
                       {"perron_multiplicity", report.multiplicity_near(report.perron_root)},
                       {"roots", roots}};
        try {
            out.vector = markov ? oracle::stationary_vector(g) : oracle::perron_vector(g, report);
            out.summary["vector"] = *out.vector;
        } catch (const Error &e) {
            out.summary["vector_error"] = e.what();
        }
    } catch (const Error &e) {
        out.summary = {{"error", e.what()}};
    }
    return out;
}

inline const char *csv_header(bool with_oracle) {
    return with_oracle
               ? "step,method,severity_total,slope,lambda_estimate,angle_to_prev_deg,angle_to_oracle_deg\n"
               : "step,method,severity_total,slope,lambda_estimate,angle_to_prev_deg\n";
}

inline void write_csv_rows(std::ostream &out, const char *method, const EigenEstimate &r,
                           const std::vector<double> &oracle_angles) {
    for (const TraceRecord &t : r.trace) {
        out << t.step << ',' << method << ',' << fmt17(t.severity_total) << ',' << fmt17(t.slope)
            << ',' << fmt17(t.lambda_estimate) << ',' << fmt17(t.angle_to_prev_deg);
        if (!oracle_angles.empty())
            out << ',' << fmt17(oracle_angles[t.step]);
        out << '\n';
    }
}

/// Observer recording the angle of every iterate to the oracle vector.
inline IterateObserver oracle_angle_recorder(const std::optional<std::vector<double>> &oracle,
                                            std::vector<double> &angles) {
    if (!oracle)
        return {};
    return [&oracle, &angles](std::size_t step, std::span<const double> x) {
        if (angles.size() <= step)
            angles.resize(step + 1);
        angles[step] = angle_deg(x, *oracle);
    };
}

inline void emit_json(const json &report, const RunOptions &opt, std::ostream &out) {
    if (opt.output_path.empty()) {
        out << report.dump(2) << '\n';
        return;
    }
    std::ofstream file(opt.output_path);
    if (!file)
        throw Error(ErrorKind::Io, "cannot write '" + opt.output_path + "'");
    file << report.dump(2) << '\n';
}

inline int exit_for(Status s) {
    return s == Status::Converged ? exit_converged : exit_not_converged;
}

} // namespace detail

inline int cmd_estimate(const RunOptions &opt, std::ostream &out) {
    const EstimatorConfig cfg = detail::estimator_config(opt);
    const detail::LoadedGraph loaded = detail::load_graph(opt);
    const Graph &g = *loaded.graph;
    const detail::OracleSummary oracle = detail::oracle_summary(g, opt.markov);

    json report = {{"method", "infection"},
                   {"graph", loaded.provenance},
                   {"config", detail::config_echo(opt)},
                   {"rerun", detail::rerun_args("estimate", opt)}};

    std::vector<double> oracle_angles;
    EigenEstimate result;
    try {
        result = estimate(g, cfg, detail::oracle_angle_recorder(oracle.vector, oracle_angles));
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::ZeroSeverity)
            throw;
        report["result"] = {{"status", to_string(Status::ZeroSeverity)}, {"error", e.what()}};
        detail::emit_json(report, opt, out);
        return exit_error;
    }

    report["result"] = detail::result_json(result);
    if (!oracle.summary.is_null()) {
        report["oracle"] = oracle.summary;
        if (oracle.vector)
            report["result"]["angle_to_oracle_deg"] = angle_deg(result.vector, *oracle.vector);
    }
    if (!opt.trace_path.empty()) {
        std::ofstream csv(opt.trace_path);
        if (!csv)
            throw Error(ErrorKind::Io, "cannot write '" + opt.trace_path + "'");
        csv << detail::csv_header(oracle.vector.has_value());
        detail::write_csv_rows(csv, "infection", result, oracle_angles);
    }
    detail::emit_json(report, opt, out);
    return detail::exit_for(result.status);
}

/// Runs both methods from the same x0. The CSV trace goes to --trace, or to
/// `out` when no trace path is given, in which case the JSON summary goes to `err`.
inline int cmd_compare(const RunOptions &opt, std::ostream &out, std::ostream &err) {
    const EstimatorConfig cfg = detail::estimator_config(opt);
    const PowerConfig pcfg = detail::power_config(opt);
    const detail::LoadedGraph loaded = detail::load_graph(opt);
    const Graph &g = *loaded.graph;
    const detail::OracleSummary oracle = detail::oracle_summary(g, opt.markov);

    std::vector<double> ours_angles;
    std::vector<double> power_angles;
    const EigenEstimate ours =
        estimate(g, cfg, detail::oracle_angle_recorder(oracle.vector, ours_angles));
    EigenEstimate power;
    json power_json;
    try {
        power = power_iterate(g, pcfg, detail::oracle_angle_recorder(oracle.vector, power_angles));
        power_json = detail::result_json(power);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::ZeroVector)
            throw;
        power_json = {{"status", "zero-vector"}, {"error", e.what()}};
    }

    std::ostringstream csv;
    csv << detail::csv_header(oracle.vector.has_value());
    detail::write_csv_rows(csv, "infection", ours, ours_angles);
    detail::write_csv_rows(csv, "power", power, power_angles);

    json summary = {{"method", "both"},
                    {"graph", loaded.provenance},
                    {"config", detail::config_echo(opt)},
                    {"rerun", detail::rerun_args("compare", opt)},
                    {"results", {{"infection", detail::result_json(ours)}, {"power", power_json}}},
                    {"converged",
                     {{"infection", ours.status == Status::Converged},
                      {"power", !power.trace.empty() && power.status == Status::Converged}}}};
    if (!oracle.summary.is_null()) {
        summary["oracle"] = oracle.summary;
        if (oracle.vector) {
            summary["results"]["infection"]["angle_to_oracle_deg"] =
                angle_deg(ours.vector, *oracle.vector);
            if (!power.vector.empty())
                summary["results"]["power"]["angle_to_oracle_deg"] =
                    angle_deg(power.vector, *oracle.vector);
        }
    }

    if (opt.trace_path.empty()) {
        out << csv.str();
        err << summary.dump(2) << '\n';
    } else {
        std::ofstream file(opt.trace_path);
        if (!file)
            throw Error(ErrorKind::Io, "cannot write '" + opt.trace_path + "'");
        file << csv.str();
        detail::emit_json(summary, opt, out);
    }
    return detail::exit_for(ours.status);
}

struct GenerateOptions {
    std::string family;
    bool markov = false;
    std::string dangling = "error";
    std::uint64_t seed = 0;
    std::string output_path;
};

inline int cmd_generate(const GenerateOptions &opt, std::ostream &out) {
    FamilyParams params;
    Graph g = [&] {
        try {
            params = parse_family(opt.family, opt.seed);
            return generate(params);
        } catch (const Error &e) {
            throw UsageError(e.what());
        }
    }();
    if (opt.markov)
        g = markov_normalize(g, detail::parse_dangling(opt.dangling));

    std::string comment = to_string(params);
    if (std::holds_alternative<RandomNonneg>(params))
        comment += " seed " + std::to_string(opt.seed);
    if (opt.markov)
        comment += " markov";
    if (opt.output_path.empty()) {
        save_edge_list(g, out, comment);
        return exit_converged;
    }
    std::ofstream file(opt.output_path);
    if (!file)
        throw Error(ErrorKind::Io, "cannot write '" + opt.output_path + "'");
    save_edge_list(g, file, comment);
    return exit_converged;
}

namespace detail {

inline void add_run_options(CLI::App &cmd, RunOptions &opt) {
    auto *input = cmd.add_option("--input", opt.input, "Edge-list file");
    auto *gen = cmd.add_option("--generate", opt.family, "Graph family, e.g. star:4");
    input->excludes(gen);
    cmd.add_flag("--markov", opt.markov, "Column-normalise into a transition matrix");
    cmd.add_option("--dangling", opt.dangling, "Dangling-node policy: error | self-loop");
    cmd.add_option("--seed", opt.seed, "Seed for random families");
    cmd.add_option("--beta", opt.beta, "Infection rate");
    cmd.add_option("--dt", opt.dt, "Euler step size");
    cmd.add_option("--x0", opt.x0, "Initial severity: ones | seed:K");
    cmd.add_option("--tol-lambda", opt.tol_lambda, "Relative eigenvalue change threshold");
    cmd.add_option("--tol-angle", opt.tol_angle, "Successive-iterate angle threshold (degrees)");
    cmd.add_option("--stable-window", opt.stable_window, "Consecutive passing steps required");
    cmd.add_option("--max-steps", opt.max_steps, "Step limit");
    cmd.add_option("--trace", opt.trace_path, "CSV trace output path");
    cmd.add_option("-o,--output", opt.output_path, "JSON report output path");
}

} // namespace detail

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Dominant eigenpair estimation of non-negative matrices via infection dynamics"};
    app.require_subcommand(1);

    RunOptions estimate_opt;
    RunOptions compare_opt;
    GenerateOptions generate_opt;
    auto *estimate_cmd = app.add_subcommand("estimate", "Estimate the dominant eigenpair");
    detail::add_run_options(*estimate_cmd, estimate_opt);
    auto *compare_cmd = app.add_subcommand("compare", "Compare with classical power iteration");
    detail::add_run_options(*compare_cmd, compare_opt);
    auto *generate_cmd = app.add_subcommand("generate", "Write a generated graph as an edge list");
    generate_cmd->add_option("family", generate_opt.family, "Graph family, e.g. star:4")->required();
    generate_cmd->add_flag("--markov", generate_opt.markov, "Column-normalise");
    generate_cmd->add_option("--dangling", generate_opt.dangling, "error | self-loop");
    generate_cmd->add_option("--seed", generate_opt.seed, "Seed for random families");
    generate_cmd->add_option("-o,--output", generate_opt.output_path, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_converged;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*generate_cmd)
            return cmd_generate(generate_opt, out);
        RunOptions &opt = *estimate_cmd ? estimate_opt : compare_opt;
        if (opt.input.empty() && opt.family.empty())
            throw UsageError("one of --input or --generate is required");
        return *estimate_cmd ? cmd_estimate(opt, out) : cmd_compare(opt, out, err);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"infect"};
    for (const std::string &a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace infect::cli

#endif
