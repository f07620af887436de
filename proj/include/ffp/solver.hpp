#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffp/contraction.hpp"
#include "ffp/fuzzy.hpp"
#include "ffp/linalg.hpp"
#include "ffp/seminorm.hpp"
#include "ffp/tnorm.hpp"

namespace ffp {

enum class ScheduleKind { Zero, Constant, Harmonic };

/// Relaxation weights for the averaged iteration
///     y_{n+1} = lambda_n * y_n + (1 - lambda_n) * F(y_n).
/// Zero reproduces plain Picard iteration exactly; Constant(0) is required to
/// match it bit for bit. Harmonic uses lambda_n = 1 - 1/(n+1).
class LambdaSchedule {
public:
    static LambdaSchedule zero();
    static LambdaSchedule constant(double lambda);
    static LambdaSchedule harmonic();
    static LambdaSchedule from_name(const std::string& name, std::optional<double> value = {});

    double operator()(int n) const;
    ScheduleKind kind() const { return kind_; }
    std::string name() const;
    std::optional<double> constant_value() const;

    bool operator==(const LambdaSchedule&) const = default;

private:
    ScheduleKind kind_ = ScheduleKind::Zero;
    double lambda_ = 0.0;
};

struct SolverConfig {
    SolverConfig(MapSpec map_, SeminormFamily family_)
        : map(std::move(map_)), family(std::move(family_)) {}

    MapSpec map;
    SeminormFamily family;
    TNorm tnorm = default_tnorm();
    Point y0;  ///< empty means the origin
    LambdaSchedule schedule = LambdaSchedule::zero();
    double t_probe = 1.0;
    double alpha_tol = 1e-9;
    int max_iters = 200;
    int cauchy_window = 1000;
    std::uint64_t seed = 0;
};

/// Raises ConfigError on dimension mismatches, out-of-range numerics, or a
/// non-separating family (checked on a fixed internal candidate set, so the
/// verdict does not depend on the scenario seed).
void validate_solver_config(const SolverConfig& cfg);

enum class Termination { Converged, MaxIters, Diverged };

std::string to_string(Termination t);

/// One completed step of the iteration. Row n describes y_n: residual_fix is
/// q_i(y_n - F(y_n)), residual_step is q_i(y_{n+1} - y_n), and the membership
/// columns are the same differences pushed through p_i at t_probe.
struct TraceStep {
    int n = 0;
    Point y;
    std::vector<double> residual_step;
    std::vector<double> residual_fix;
    std::vector<double> membership_step;
    std::vector<double> membership_fix;
};

struct IterationTrace {
    std::vector<TraceStep> steps;
    Termination terminated = Termination::MaxIters;
    std::optional<int> diverged_at;
};

struct FixedPointResult {
    Point u;  ///< newest iterate when the loop stopped
    IterationTrace trace;
    std::optional<Point> oracle;      ///< (I - A)^{-1} b for affine maps, when unique
    std::optional<double> oracle_gap; ///< sup distance from u to the oracle
};

/// Runs the averaged iteration from y0. Stops Converged at the first step
/// where every family member has both membership columns above 1 - alpha_tol;
/// Diverged when an iterate leaves [-1e150, 1e150] or goes non-finite;
/// MaxIters otherwise. The final iterate u is y_{n+1} of the last step.
FixedPointResult iterate(const SolverConfig& cfg);

/// Checks that the classical fixity residual q_i(y_n - F(y_n)) never rises by
/// more than tol between consecutive steps. Guaranteed for affine
/// contractions under any shipped schedule; a diagnostic, not an assertion,
/// for registered maps.
struct MonotonicityReport {
    bool passed = true;
    double worst_increase = 0.0;
    std::optional<int> violation_step;
    std::optional<std::size_t> violation_member;
};

MonotonicityReport residual_monotonicity(const IterationTrace& trace, double tol = 1e-12);

/// Scans iterate pairs n < m <= n + window for the Cauchy pattern: a pair is
/// flagged when some member has p_i(y_n - y_m, eps + delta/2) <= 1 - (alpha +
/// beta/2). When a certified Lipschitz constant is supplied, pairs before the
/// classical burn-in index (the first n with L^n q_i(y1-y0)/(1-L) inside the
/// membership threshold for every member) are excused, since early iterates
/// are legitimately far apart.
struct CauchyReport {
    bool clean = true;
    std::size_t pairs_checked = 0;
    int burn_in = 0;
    double min_membership = 1.0;
    std::optional<std::pair<int, int>> offending;
    std::optional<std::size_t> offending_member;
};

CauchyReport cauchy_diagnostic(const IterationTrace& trace, const SeminormFamily& family,
                               double epsilon, double delta, double alpha, double beta,
                               std::optional<double> lipschitz = std::nullopt, int window = 1000);

/// Independent fixity audit of a candidate point: membership is the worst
/// p_i(u - F(u), t) over the family, residual the worst classical gauge.
struct FixedPointCheck {
    bool passed = false;
    double membership = 0.0;
    double residual = 0.0;
};

FixedPointCheck verify_fixed_point(const Point& u, const MapSpec& f, const SeminormFamily& family,
                                   double t, double alpha_tol);

/// Reruns the iteration from several starts concurrently (std::async, joined
/// in input order so output stays deterministic) and compares the limits.
struct UniquenessReport {
    bool all_converged = false;
    std::vector<FixedPointResult> runs;
    double max_sup_gap = 0.0;          ///< over pairs of converged limits
    double min_pair_membership = 1.0;  ///< min over pairs and members at t_probe
    bool consistent = false;           ///< all converged and gaps within gap_tol
};

UniquenessReport uniqueness_probe(const SolverConfig& cfg, const std::vector<Point>& starts,
                                  double gap_tol = 1e-6);

/// Closed-form fixed point of an affine map by solving (I - A) x = b with
/// partially pivoted elimination. Raises NoUniqueFixedPointError when I - A
/// is singular at the pivot threshold.
Point oracle_affine_fixed_point(const MapSpec& f);

/// CSV: header n,y_0,...,y_{dim-1}, then per member i the four columns
/// q{i}_step,q{i}_fix,p{i}_step,p{i}_fix; values in %.17g.
void write_trace_csv(std::ostream& os, const IterationTrace& trace, std::size_t dim,
                     std::size_t members);

}  // namespace ffp
