#include "ffp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ffp/errors.hpp"
#include "ffp/format.hpp"

namespace ffp {

namespace {

constexpr double kDivergenceBound = 1e150;
constexpr std::uint64_t kSeparationSeed = 0x0f0f5eedULL;

bool within_bounds(const Point& y) {
    for (double c : y)
        if (!std::isfinite(c) || std::abs(c) > kDivergenceBound) return false;
    return true;
}

}  // namespace

LambdaSchedule LambdaSchedule::zero() { return LambdaSchedule{}; }

LambdaSchedule LambdaSchedule::constant(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw ConfigError("lambda schedule: constant value must lie in [0,1)");
    LambdaSchedule s;
    s.kind_ = ScheduleKind::Constant;
    s.lambda_ = lambda;
    return s;
}

LambdaSchedule LambdaSchedule::harmonic() {
    LambdaSchedule s;
    s.kind_ = ScheduleKind::Harmonic;
    return s;
}

LambdaSchedule LambdaSchedule::from_name(const std::string& name, std::optional<double> value) {
    if (name == "zero") {
        if (value) throw ConfigError("lambda schedule 'zero' takes no value");
        return zero();
    }
    if (name == "constant") {
        if (!value) throw ConfigError("lambda schedule 'constant' needs a value");
        return constant(*value);
    }
    if (name == "harmonic") {
        if (value) throw ConfigError("lambda schedule 'harmonic' takes no value");
        return harmonic();
    }
    throw ConfigError("unknown lambda schedule '" + name + "' (expected zero, constant, harmonic)");
}

double LambdaSchedule::operator()(int n) const {
    switch (kind_) {
        case ScheduleKind::Zero: return 0.0;
        case ScheduleKind::Constant: return lambda_;
        case ScheduleKind::Harmonic: return 1.0 - 1.0 / (static_cast<double>(n) + 1.0);
    }
    return 0.0;
}

std::string LambdaSchedule::name() const {
    switch (kind_) {
        case ScheduleKind::Zero: return "zero";
        case ScheduleKind::Constant: return "constant";
        case ScheduleKind::Harmonic: return "harmonic";
    }
    return "zero";
}

std::optional<double> LambdaSchedule::constant_value() const {
    if (kind_ == ScheduleKind::Constant) return lambda_;
    return std::nullopt;
}

void validate_solver_config(const SolverConfig& cfg) {
    if (cfg.map.dim() == 0) throw ConfigError("solver config: map is empty");
    if (cfg.family.dim() != cfg.map.dim()) {
        std::ostringstream msg;
        msg << "solver config: seminorm family lives on R^" << cfg.family.dim() << " but the map on R^"
            << cfg.map.dim();
        throw ConfigError(msg.str());
    }
    if (!cfg.y0.empty() && cfg.y0.size() != cfg.map.dim())
        throw ConfigError("solver config: y0 has the wrong dimension");
    if (!cfg.y0.empty() && !all_finite(cfg.y0))
        throw ConfigError("solver config: y0 has a non-finite entry");
    if (!(cfg.t_probe > 0.0) || !std::isfinite(cfg.t_probe))
        throw ConfigError("solver config: t_probe must be positive and finite");
    if (!(cfg.alpha_tol > 0.0 && cfg.alpha_tol < 1.0))
        throw ConfigError("solver config: alpha_tol must lie in (0,1)");
    if (cfg.max_iters < 1) throw ConfigError("solver config: max_iters must be at least 1");
    if (cfg.cauchy_window < 1) throw ConfigError("solver config: cauchy_window must be at least 1");
    const SeparationCheck sep = is_separating(cfg.family, kSeparationSeed, 128);
    if (!sep.separating) {
        std::ostringstream msg;
        msg << "solver config: seminorm family is not separating (the induced topology is not"
               " Hausdorff); witness vector with every gauge zero:";
        if (sep.witness)
            for (double c : *sep.witness) msg << " " << format_g17(c);
        throw ConfigError(msg.str());
    }
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::MaxIters: return "max-iters";
        case Termination::Diverged: return "diverged";
    }
    return "max-iters";
}

FixedPointResult iterate(const SolverConfig& cfg) {
    validate_solver_config(cfg);
    const std::size_t dim = cfg.map.dim();
    const std::size_t members = cfg.family.size();

    std::vector<FuzzySeminorm> fuzzies;
    fuzzies.reserve(members);
    for (const Seminorm& q : cfg.family.members()) fuzzies.emplace_back(q);

    FixedPointResult result;
    result.trace.terminated = Termination::MaxIters;
    Point y = cfg.y0.empty() ? zeros(dim) : cfg.y0;
    result.u = y;

    for (int n = 0; n < cfg.max_iters; ++n) {
        const Point fy = cfg.map.apply(y);
        if (!within_bounds(fy)) {
            result.trace.terminated = Termination::Diverged;
            result.trace.diverged_at = n;
            break;
        }
        const double lambda = cfg.schedule(n);
        Point y_next(dim);
        for (std::size_t i = 0; i < dim; ++i) y_next[i] = lambda * y[i] + (1.0 - lambda) * fy[i];
        if (!within_bounds(y_next)) {
            result.trace.terminated = Termination::Diverged;
            result.trace.diverged_at = n;
            break;
        }

        TraceStep step;
        step.n = n;
        step.y = y;
        step.residual_step.reserve(members);
        step.residual_fix.reserve(members);
        step.membership_step.reserve(members);
        step.membership_fix.reserve(members);
        const Point d_step = subtract(y_next, y);
        const Point d_fix = subtract(y, fy);
        bool stop = true;
        for (std::size_t i = 0; i < members; ++i) {
            step.residual_step.push_back(cfg.family[i](d_step));
            step.residual_fix.push_back(cfg.family[i](d_fix));
            step.membership_step.push_back(fuzzies[i](d_step, cfg.t_probe));
            step.membership_fix.push_back(fuzzies[i](d_fix, cfg.t_probe));
            if (!(step.membership_step.back() > 1.0 - cfg.alpha_tol &&
                  step.membership_fix.back() > 1.0 - cfg.alpha_tol))
                stop = false;
        }
        result.trace.steps.push_back(std::move(step));
        y = std::move(y_next);
        result.u = y;
        if (stop) {
            result.trace.terminated = Termination::Converged;
            break;
        }
    }

    if (cfg.map.is_affine()) {
        const AffineMap& aff = cfg.map.affine_form();
        Matrix i_minus_a = Matrix::identity(dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) i_minus_a(r, c) -= aff.a(r, c);
        if (auto x = solve_linear(i_minus_a, aff.b)) {
            result.oracle_gap = sup_distance(result.u, *x);
            result.oracle = std::move(x);
        }
    }
    return result;
}

MonotonicityReport residual_monotonicity(const IterationTrace& trace, double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("residual_monotonicity: negative tolerance");
    MonotonicityReport report;
    for (std::size_t n = 1; n < trace.steps.size(); ++n) {
        const auto& prev = trace.steps[n - 1].residual_fix;
        const auto& cur = trace.steps[n].residual_fix;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const double rise = cur[i] - prev[i];
            if (rise > report.worst_increase) report.worst_increase = rise;
            if (rise > tol && report.passed) {
                report.passed = false;
                report.violation_step = trace.steps[n].n;
                report.violation_member = i;
            }
        }
    }
    return report;
}

CauchyReport cauchy_diagnostic(const IterationTrace& trace, const SeminormFamily& family,
                               double epsilon, double delta, double alpha, double beta,
                               std::optional<double> lipschitz, int window) {
    if (!(epsilon > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("cauchy_diagnostic: epsilon and delta must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("cauchy_diagnostic: alpha must lie in (0,1)");
    if (!(beta > 0.0 && alpha + beta < 1.0))
        throw std::invalid_argument("cauchy_diagnostic: need beta > 0 and alpha + beta < 1");
    if (lipschitz && !(*lipschitz >= 0.0 && *lipschitz < 1.0))
        throw std::invalid_argument("cauchy_diagnostic: lipschitz must lie in [0,1)");
    if (window < 1) throw std::invalid_argument("cauchy_diagnostic: window must be at least 1");
    for (const auto& step : trace.steps)
        if (step.y.size() != family.dim())
            throw std::invalid_argument("cauchy_diagnostic: trace/family dimension mismatch");

    const double gamma = alpha + beta / 2.0;
    const double t_mid = epsilon + delta / 2.0;
    const double cutoff = 1.0 - gamma;

    CauchyReport report;
    const std::size_t count = trace.steps.size();
    if (count == 0) return report;

    if (lipschitz && *lipschitz < 1.0) {
        // q(y_n - y_m) <= L^n q(y1-y0)/(1-L); excuse n until that bound is
        // inside the classical distance matching membership cutoff.
        const double threshold = t_mid * gamma / (1.0 - gamma);
        int burn = 0;
        for (std::size_t i = 0; i < family.size(); ++i) {
            double bound = trace.steps.front().residual_step[i] / (1.0 - *lipschitz);
            int n = 0;
            while (bound >= threshold && n < static_cast<int>(count)) {
                bound *= *lipschitz;
                ++n;
            }
            burn = std::max(burn, n);
        }
        report.burn_in = burn;
    }

    for (std::size_t n = static_cast<std::size_t>(report.burn_in); n < count; ++n) {
        const std::size_t last = std::min(count - 1, n + static_cast<std::size_t>(window));
        for (std::size_t m = n + 1; m <= last; ++m) {
            ++report.pairs_checked;
            const Point gap = subtract(trace.steps[n].y, trace.steps[m].y);
            for (std::size_t i = 0; i < family.size(); ++i) {
                const double membership = t_mid / (t_mid + family[i](gap));
                if (membership < report.min_membership) report.min_membership = membership;
                if (membership <= cutoff && report.clean) {
                    report.clean = false;
                    report.offending = {trace.steps[n].n, trace.steps[m].n};
                    report.offending_member = i;
                }
            }
        }
    }
    return report;
}

FixedPointCheck verify_fixed_point(const Point& u, const MapSpec& f, const SeminormFamily& family,
                                   double t, double alpha_tol) {
    if (u.size() != f.dim()) throw std::invalid_argument("verify_fixed_point: dimension mismatch");
    if (family.dim() != f.dim())
        throw std::invalid_argument("verify_fixed_point: family/map dimension mismatch");
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("verify_fixed_point: t must be positive and finite");
    if (!(alpha_tol > 0.0 && alpha_tol < 1.0))
        throw std::invalid_argument("verify_fixed_point: alpha_tol must lie in (0,1)");

    const Point gap = subtract(u, f.apply(u));
    FixedPointCheck check;
    check.membership = 1.0;
    for (const Seminorm& q : family.members()) {
        const double residual = q(gap);
        check.residual = std::max(check.residual, residual);
        check.membership = std::min(check.membership, FuzzySeminorm(q)(gap, t));
    }
    check.passed = check.membership > 1.0 - alpha_tol;
    return check;
}

UniquenessReport uniqueness_probe(const SolverConfig& cfg, const std::vector<Point>& starts,
                                  double gap_tol) {
    if (starts.size() < 2)
        throw std::invalid_argument("uniqueness_probe: need at least two starting points");
    if (!(gap_tol > 0.0)) throw std::invalid_argument("uniqueness_probe: gap_tol must be positive");
    for (const Point& s : starts)
        if (s.size() != cfg.map.dim())
            throw ConfigError("uniqueness_probe: start point has the wrong dimension");
    validate_solver_config(cfg);

    std::vector<std::future<FixedPointResult>> futures;
    futures.reserve(starts.size());
    for (const Point& s : starts) {
        SolverConfig run = cfg;
        run.y0 = s;
        futures.push_back(
            std::async(std::launch::async, [run = std::move(run)] { return iterate(run); }));
    }

    UniquenessReport report;
    report.runs.reserve(starts.size());
    for (auto& f : futures) report.runs.push_back(f.get());

    report.all_converged = true;
    for (const auto& run : report.runs)
        if (run.trace.terminated != Termination::Converged) report.all_converged = false;

    std::vector<FuzzySeminorm> fuzzies;
    for (const Seminorm& q : cfg.family.members()) fuzzies.emplace_back(q);
    for (std::size_t a = 0; a < report.runs.size(); ++a) {
        if (report.runs[a].trace.terminated != Termination::Converged) continue;
        for (std::size_t b = a + 1; b < report.runs.size(); ++b) {
            if (report.runs[b].trace.terminated != Termination::Converged) continue;
            const Point gap = subtract(report.runs[a].u, report.runs[b].u);
            report.max_sup_gap = std::max(report.max_sup_gap, sup_norm(gap));
            for (const auto& p : fuzzies)
                report.min_pair_membership =
                    std::min(report.min_pair_membership, p(gap, cfg.t_probe));
        }
    }
    report.consistent = report.all_converged && report.max_sup_gap <= gap_tol;
    return report;
}

Point oracle_affine_fixed_point(const MapSpec& f) {
    if (!f.is_affine())
        throw std::invalid_argument("oracle_affine_fixed_point: map is not affine");
    const AffineMap& aff = f.affine_form();
    const std::size_t dim = f.dim();
    Matrix i_minus_a = Matrix::identity(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) i_minus_a(r, c) -= aff.a(r, c);
    auto x = solve_linear(i_minus_a, aff.b);
    if (!x)
        throw NoUniqueFixedPointError(
            "affine map has no unique fixed point: I - A is singular at the pivot threshold");
    return *x;
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace, std::size_t dim,
                     std::size_t members) {
    os << "n";
    for (std::size_t j = 0; j < dim; ++j) os << ",y_" << j;
    for (std::size_t i = 0; i < members; ++i)
        os << ",q" << i << "_step,q" << i << "_fix,p" << i << "_step,p" << i << "_fix";
    os << "\n";
    for (const TraceStep& step : trace.steps) {
        if (step.y.size() != dim || step.residual_step.size() != members)
            throw std::invalid_argument("write_trace_csv: trace shape mismatch");
        os << step.n;
        for (double c : step.y) os << "," << format_g17(c);
        for (std::size_t i = 0; i < members; ++i) {
            os << "," << format_g17(step.residual_step[i]) << "," << format_g17(step.residual_fix[i])
               << "," << format_g17(step.membership_step[i]) << ","
               << format_g17(step.membership_fix[i]);
        }
        os << "\n";
    }
}

}  // namespace ffp
