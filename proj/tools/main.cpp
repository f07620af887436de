#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffp/contraction.hpp"
#include "ffp/errors.hpp"
#include "ffp/format.hpp"
#include "ffp/fuzzy.hpp"
#include "ffp/rng.hpp"
#include "ffp/scenario.hpp"
#include "ffp/seminorm.hpp"
#include "ffp/solver.hpp"
#include "ffp/tnorm.hpp"

namespace {

using namespace ffp;

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel g_log = LogLevel::Quiet;

LogLevel parse_log_level() {
    const char* env = std::getenv("FUZZY_FIXPOINT_LOG");
    if (env == nullptr || *env == '\0') return LogLevel::Quiet;
    const std::string value = env;
    if (value == "quiet") return LogLevel::Quiet;
    if (value == "info") return LogLevel::Info;
    if (value == "debug") return LogLevel::Debug;
    throw ConfigError("FUZZY_FIXPOINT_LOG must be quiet, info or debug (got '" + value + "')");
}

void log_info(const std::string& msg) {
    if (g_log >= LogLevel::Info) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (g_log >= LogLevel::Debug) std::cerr << "[debug] " << msg << "\n";
}

std::string point_str(const Point& y) {
    std::string out;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i > 0) out += ' ';
        out += format_g17(y[i]);
    }
    return out;
}

const char* verdict(bool passed) { return passed ? "passed" : "FAILED"; }

Scenario load_for_cli(const std::string& path) {
    try {
        Scenario sc = load_scenario(path);
        log_info("loaded scenario '" + sc.name + "' (dim " + std::to_string(sc.dim) + ", " +
                 std::to_string(sc.seminorms.size()) + " seminorm(s))");
        return sc;
    } catch (const ScenarioIoError&) {
        throw;
    } catch (const ScenarioError& e) {
        throw ConfigError("in scenario '" + path + "': " + e.what());
    }
}

void debug_dump_trace(const IterationTrace& trace) {
    if (g_log < LogLevel::Debug) return;
    for (const TraceStep& step : trace.steps) {
        std::string line = "n=" + std::to_string(step.n) + " y=" + point_str(step.y) +
                           " q_fix=" + point_str(step.residual_fix);
        log_debug(line);
    }
}

std::optional<double> family_lipschitz(const MapSpec& map, const SeminormFamily& family,
                                       std::uint64_t seed) {
    if (!map.is_affine()) return std::nullopt;
    double worst = 0.0;
    for (const Seminorm& q : family.members()) {
        try {
            worst = std::max(worst, operator_lipschitz(map, q, 256, seed).value);
        } catch (const CertificationRefusedError&) {
            return std::nullopt;
        }
    }
    if (worst >= 1.0) return std::nullopt;
    return worst;
}

int cmd_run(const std::string& path, const std::string& trace_out) {
    const Scenario sc = load_for_cli(path);
    const SolverConfig cfg = sc.to_solver_config();
    const FixedPointResult result = iterate(cfg);
    debug_dump_trace(result.trace);

    if (!trace_out.empty()) {
        std::ofstream out(trace_out);
        if (!out) throw ConfigError("cannot open trace output file '" + trace_out + "'");
        write_trace_csv(out, result.trace, cfg.map.dim(), cfg.family.size());
        if (!out.good()) throw ConfigError("failed while writing trace file '" + trace_out + "'");
        log_info("trace written to '" + trace_out + "'");
    }

    const FixedPointCheck check =
        verify_fixed_point(result.u, cfg.map, cfg.family, cfg.t_probe, cfg.alpha_tol);

    std::cout << "scenario: " << sc.name << "\n";
    std::cout << "termination: " << to_string(result.trace.terminated) << "\n";
    std::cout << "steps: " << result.trace.steps.size() << "\n";
    std::cout << "U: " << point_str(result.u) << "\n";
    std::cout << "verify: " << verdict(check.passed) << " membership=" << format_g17(check.membership)
              << " residual=" << format_g17(check.residual) << "\n";
    if (result.oracle) {
        std::cout << "oracle: " << point_str(*result.oracle) << "\n";
        std::cout << "oracle_gap: " << format_g17(*result.oracle_gap) << "\n";
    } else if (cfg.map.is_affine()) {
        std::cout << "oracle: none (I - A singular)\n";
    }

    const bool ok = result.trace.terminated == Termination::Converged && check.passed;
    return ok ? 0 : 1;
}

int cmd_certify(const std::string& path, double epsilon, double alpha) {
    if (!(epsilon > 0.0)) throw ConfigError("certify: --epsilon must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("certify: --alpha must lie in (0,1)");
    const Scenario sc = load_for_cli(path);

    bool all_ok = true;
    for (std::size_t i = 0; i < sc.seminorms.size(); ++i) {
        const Seminorm& q = sc.seminorms[i];
        try {
            ContractionCertificate cert =
                certify_affine_contraction(sc.map, q, epsilon, alpha, 256, sc.seed);
            cert.seminorm_index = i;
            std::cout << "certificate[" << i << "]: holds seminorm=" << q.describe()
                      << " L=" << format_g17(cert.lipschitz) << " epsilon=" << format_g17(cert.epsilon)
                      << " alpha=" << format_g17(cert.alpha) << " delta=" << format_g17(cert.delta)
                      << " beta=" << format_g17(cert.beta) << "\n";
        } catch (const NotAContractionError& e) {
            std::cout << "certificate[" << i << "]: not-a-contraction (L=" << format_g17(e.lipschitz())
                      << ") seminorm=" << q.describe() << "\n";
            all_ok = false;
        } catch (const CertificationRefusedError& e) {
            std::cout << "certificate[" << i << "]: refused: " << e.what() << "\n";
            all_ok = false;
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_check_axioms(const std::string& path, int samples) {
    if (samples < 1) throw ConfigError("check-axioms: --samples must be at least 1");
    const Scenario sc = load_for_cli(path);

    bool ok = true;
    for (const AxiomReport& r : check_tnorm_axioms(sc.tnorm, samples, sc.seed)) {
        std::cout << "tnorm " << sc.tnorm.name() << " " << r.axiom << ": " << verdict(r.passed)
                  << " (max_violation=" << format_g17(r.max_violation) << ")\n";
        if (!r.passed) {
            std::cout << "  detail: " << r.detail << " at (" << point_str(r.witness) << ")\n";
            ok = false;
        }
    }
    for (std::size_t i = 0; i < sc.seminorms.size(); ++i) {
        const FuzzySeminorm p(sc.seminorms[i]);
        for (const AxiomReport& r :
             check_fuzzy_axioms(p, sc.tnorm, samples, sc.seed + i)) {
            std::cout << "seminorm[" << i << "] " << r.axiom << ": " << verdict(r.passed)
                      << " (max_violation=" << format_g17(r.max_violation) << ")\n";
            if (!r.passed) {
                std::cout << "  detail: " << r.detail << " at (" << point_str(r.witness) << ")\n";
                ok = false;
            }
        }
        const AxiomReport variant = check_scaling_variant(p, samples, sc.seed + i);
        std::cout << "seminorm[" << i << "] " << variant.axiom
                  << " (informational): " << (variant.passed ? "satisfied" : "violated")
                  << " (max_violation=" << format_g17(variant.max_violation) << ")\n";
    }
    return ok ? 0 : 1;
}

int cmd_probe_uniqueness(const std::string& path, int starts_n, double spread, double gap_tol) {
    if (starts_n < 2) throw ConfigError("probe-uniqueness: --starts must be at least 2");
    if (!(spread > 0.0)) throw ConfigError("probe-uniqueness: --spread must be positive");
    if (!(gap_tol > 0.0)) throw ConfigError("probe-uniqueness: --gap-tol must be positive");
    const Scenario sc = load_for_cli(path);
    const SolverConfig cfg = sc.to_solver_config();

    const Point base = cfg.y0.empty() ? zeros(cfg.map.dim()) : cfg.y0;
    std::vector<Point> starts;
    starts.reserve(static_cast<std::size_t>(starts_n));
    starts.push_back(base);
    Rng rng(sc.seed);
    for (int k = 1; k < starts_n; ++k) {
        Point s = base;
        for (auto& c : s) c += rng.symmetric(spread);
        starts.push_back(std::move(s));
    }

    const UniquenessReport report = uniqueness_probe(cfg, starts, gap_tol);
    std::cout << "starts: " << starts.size() << "\n";
    for (std::size_t k = 0; k < report.runs.size(); ++k) {
        const auto& run = report.runs[k];
        std::cout << "run[" << k << "]: " << to_string(run.trace.terminated)
                  << " steps=" << run.trace.steps.size() << " U=" << point_str(run.u) << "\n";
    }
    std::cout << "all_converged: " << (report.all_converged ? "true" : "false") << "\n";
    std::cout << "max_sup_gap: " << format_g17(report.max_sup_gap) << "\n";
    std::cout << "min_pair_membership: " << format_g17(report.min_pair_membership) << "\n";
    std::cout << "consistent: " << (report.consistent ? "true" : "false") << "\n";
    return report.consistent ? 0 : 1;
}

int cmd_cauchy(const std::string& path, double epsilon, double delta, double alpha, double beta) {
    if (!(epsilon > 0.0)) throw ConfigError("cauchy: --epsilon must be positive");
    if (!(delta > 0.0)) throw ConfigError("cauchy: --delta must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("cauchy: --alpha must lie in (0,1)");
    if (!(beta > 0.0 && alpha + beta < 1.0))
        throw ConfigError("cauchy: need --beta > 0 and --alpha + --beta < 1");
    const Scenario sc = load_for_cli(path);
    const SolverConfig cfg = sc.to_solver_config();

    const FixedPointResult result = iterate(cfg);
    debug_dump_trace(result.trace);
    const std::optional<double> lips = family_lipschitz(cfg.map, cfg.family, sc.seed);
    const CauchyReport report = cauchy_diagnostic(result.trace, cfg.family, epsilon, delta, alpha,
                                                  beta, lips, cfg.cauchy_window);

    std::cout << "termination: " << to_string(result.trace.terminated) << "\n";
    std::cout << "steps: " << result.trace.steps.size() << "\n";
    std::cout << "lipschitz: " << (lips ? format_g17(*lips) : std::string("none")) << "\n";
    std::cout << "burn_in: " << report.burn_in << "\n";
    std::cout << "pairs_checked: " << report.pairs_checked << "\n";
    std::cout << "min_membership: " << format_g17(report.min_membership) << "\n";
    std::cout << "clean: " << (report.clean ? "true" : "false") << "\n";
    if (report.offending)
        std::cout << "offending: n=" << report.offending->first << " m=" << report.offending->second
                  << " member=" << *report.offending_member << "\n";
    return report.clean ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy seminormed-space fixed-point toolkit"};
    app.require_subcommand(1);

    std::string run_path;
    std::string run_trace_out;
    auto* run_cmd = app.add_subcommand("run", "Iterate the scenario map and verify the limit");
    run_cmd->add_option("scenario", run_path, "scenario JSON file")->required();
    run_cmd->add_option("--trace-out", run_trace_out, "write the iteration trace as CSV");

    std::string cert_path;
    double cert_epsilon = 0.0;
    double cert_alpha = 0.0;
    auto* cert_cmd =
        app.add_subcommand("certify", "Derive a fuzzy B-contraction certificate per seminorm");
    cert_cmd->add_option("scenario", cert_path, "scenario JSON file")->required();
    cert_cmd->add_option("--epsilon", cert_epsilon, "certificate epsilon (> 0)")->required();
    cert_cmd->add_option("--alpha", cert_alpha, "certificate alpha in (0,1)")->required();

    std::string axioms_path;
    int axioms_samples = 1000;
    auto* axioms_cmd =
        app.add_subcommand("check-axioms", "Check t-norm and fuzzy seminorm axioms by sampling");
    axioms_cmd->add_option("scenario", axioms_path, "scenario JSON file")->required();
    axioms_cmd->add_option("--samples", axioms_samples, "sample count per axiom (default 1000)");

    std::string probe_path;
    int probe_starts = 0;
    double probe_spread = 2.0;
    double probe_gap_tol = 1e-6;
    auto* probe_cmd = app.add_subcommand("probe-uniqueness",
                                         "Rerun the iteration from several seeded starts");
    probe_cmd->add_option("scenario", probe_path, "scenario JSON file")->required();
    probe_cmd->add_option("--starts", probe_starts, "number of starting points (>= 2)")->required();
    probe_cmd->add_option("--spread", probe_spread, "radius of seeded start offsets (default 2)");
    probe_cmd->add_option("--gap-tol", probe_gap_tol,
                          "sup-distance tolerance for consistency (default 1e-6)");

    std::string cauchy_path;
    double cauchy_epsilon = 0.0;
    double cauchy_delta = 0.0;
    double cauchy_alpha = 0.0;
    double cauchy_beta = 0.0;
    auto* cauchy_cmd =
        app.add_subcommand("cauchy", "Scan the iteration trace for the Cauchy pattern");
    cauchy_cmd->add_option("scenario", cauchy_path, "scenario JSON file")->required();
    cauchy_cmd->add_option("--epsilon", cauchy_epsilon, "epsilon (> 0)")->required();
    cauchy_cmd->add_option("--delta", cauchy_delta, "delta (> 0)")->required();
    cauchy_cmd->add_option("--alpha", cauchy_alpha, "alpha in (0,1)")->required();
    cauchy_cmd->add_option("--beta", cauchy_beta, "beta with alpha + beta < 1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        g_log = parse_log_level();
        if (*run_cmd) return cmd_run(run_path, run_trace_out);
        if (*cert_cmd) return cmd_certify(cert_path, cert_epsilon, cert_alpha);
        if (*axioms_cmd) return cmd_check_axioms(axioms_path, axioms_samples);
        if (*probe_cmd)
            return cmd_probe_uniqueness(probe_path, probe_starts, probe_spread, probe_gap_tol);
        if (*cauchy_cmd)
            return cmd_cauchy(cauchy_path, cauchy_epsilon, cauchy_delta, cauchy_alpha, cauchy_beta);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
