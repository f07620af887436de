#include "ffp/fuzzy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ffp/rng.hpp"

namespace ffp {

double FuzzySeminorm::operator()(const Point& y, double t) const {
    if (y.size() != dim())
        throw std::domain_error("fuzzy seminorm: point dimension mismatch");
    if (!std::isfinite(t)) throw std::domain_error("fuzzy seminorm: t must be finite");
    if (t <= 0.0) return 0.0;
    return t / (t + base_(y));
}

FuzzyBall::FuzzyBall(Point center, double alpha, double t, FuzzySeminorm seminorm)
    : center_(std::move(center)), alpha_(alpha), t_(t), seminorm_(std::move(seminorm)) {
    if (center_.size() != seminorm_.dim())
        throw std::domain_error("fuzzy ball: center dimension mismatch");
    if (!(alpha_ > 0.0 && alpha_ < 1.0))
        throw std::invalid_argument("fuzzy ball: alpha must be in (0,1)");
    if (!(t_ > 0.0)) throw std::invalid_argument("fuzzy ball: t must be positive");
}

bool FuzzyBall::contains(const Point& z) const {
    if (z.size() != center_.size())
        throw std::domain_error("fuzzy ball: point dimension mismatch");
    return seminorm_(subtract(center_, z), t_) > 1.0 - alpha_;
}

FuzzyMap as_fuzzy_map(const FuzzySeminorm& p) {
    FuzzyMap m;
    m.dim = p.dim();
    m.eval = [p](const Point& y, double t) { return p(y, t); };
    m.base_gauge = [q = p.base()](const Point& y) { return q(y); };
    return m;
}

namespace {

constexpr double kFuzzyTol = 1e-12;

struct Worst {
    double magnitude = 0.0;
    std::vector<double> at;

    void update(double mag, std::vector<double> values) {
        if (mag > magnitude) {
            magnitude = mag;
            at = std::move(values);
        }
    }
};

AxiomReport finish(std::string axiom, const Worst& worst, double tol, std::string detail) {
    AxiomReport rep;
    rep.axiom = std::move(axiom);
    rep.max_violation = worst.magnitude;
    rep.passed = worst.magnitude <= tol;
    if (!rep.passed) rep.witness = worst.at;
    rep.detail = std::move(detail);
    return rep;
}

Point sample_point(Rng& rng, std::size_t dim, double radius) {
    Point y(dim);
    for (auto& c : y) c = rng.symmetric(radius);
    return y;
}

std::vector<double> flatten(const Point& y, std::initializer_list<double> extra) {
    std::vector<double> v(y.begin(), y.end());
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
}

}  // namespace

std::vector<AxiomReport> check_fuzzy_axioms(const FuzzyMap& p, const TNorm& tn,
                                            int sample_count, std::uint64_t seed,
                                            double tail_epsilon) {
    if (sample_count < 1)
        throw std::invalid_argument("check_fuzzy_axioms: sample_count must be >= 1");
    if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0))
        throw std::invalid_argument("check_fuzzy_axioms: tail_epsilon must be in (0,1)");
    if (!p.eval || !p.base_gauge || p.dim == 0)
        throw std::invalid_argument("check_fuzzy_axioms: incomplete fuzzy map");

    Rng rng(seed);
    Worst nullity, scaling, triangle, monotone;

    for (int i = 0; i < sample_count; ++i) {
        const Point y = sample_point(rng, p.dim, 5.0);
        const Point z = sample_point(rng, p.dim, 5.0);

        // (i) membership must vanish for every t <= 0; t = 0 always included.
        for (double t : {0.0, -rng.range(0.0, 5.0)})
            nullity.update(std::abs(p.eval(y, t)), flatten(y, {t}));

        // (ii) scaling law, |v| in [0.1, 3]
        {
            const double mag = rng.range(0.1, 3.0);
            const double v = rng.unit() < 0.5 ? -mag : mag;
            const double t = rng.range(0.05, 8.0);
            const double lhs = p.eval(scaled(v, y), t);
            const double rhs = p.eval(y, t / std::abs(v));
            scaling.update(std::abs(lhs - rhs), flatten(y, {v, t}));
        }

        // (iii) triangle against the t-norm; t, s range over negatives too.
        {
            const double t = rng.range(-2.0, 6.0);
            const double s = rng.range(-2.0, 6.0);
            const double lhs = p.eval(add(y, z), t + s);
            const double rhs = tn(p.eval(y, t), p.eval(z, s));
            triangle.update(std::max(0.0, rhs - lhs), flatten(y, {t, s}));
        }

        // (iv) monotone in t, plus the closed-form tail threshold.
        {
            double t1 = rng.range(-2.0, 8.0);
            double t2 = rng.range(-2.0, 8.0);
            if (t1 > t2) std::swap(t1, t2);
            monotone.update(std::max(0.0, p.eval(y, t1) - p.eval(y, t2)),
                            flatten(y, {t1, t2}));

            const double q = p.base_gauge(y);
            const double tail_t = q > 0.0 ? q * (1.0 - tail_epsilon) / tail_epsilon : 1.0;
            const double target = q > 0.0 ? 1.0 - tail_epsilon : 1.0;
            monotone.update(std::max(0.0, target - p.eval(y, tail_t)),
                            flatten(y, {tail_t, tail_t}));
        }
    }

    std::vector<AxiomReport> reports;
    reports.push_back(finish("nullity", nullity, 0.0, "p(y,t) = 0 for t <= 0"));
    reports.push_back(finish("scaling", scaling, kFuzzyTol, "p(v y, t) = p(y, t/|v|)"));
    reports.push_back(finish("triangle", triangle, kFuzzyTol,
                             "p(y+z, t+s) >= tnorm(p(y,t), p(z,s))"));
    reports.push_back(finish("monotonicity", monotone, kFuzzyTol,
                             "p(y,.) nondecreasing with limit 1"));
    return reports;
}

std::vector<AxiomReport> check_fuzzy_axioms(const FuzzySeminorm& p, const TNorm& tn,
                                            int sample_count, std::uint64_t seed,
                                            double tail_epsilon) {
    return check_fuzzy_axioms(as_fuzzy_map(p), tn, sample_count, seed, tail_epsilon);
}

AxiomReport check_scaling_variant(const FuzzyMap& p, int sample_count, std::uint64_t seed) {
    if (sample_count < 1)
        throw std::invalid_argument("check_scaling_variant: sample_count must be >= 1");
    Rng rng(seed);
    Worst worst;
    for (int i = 0; i < sample_count; ++i) {
        const Point y = sample_point(rng, p.dim, 5.0);
        const double mag = rng.range(0.1, 3.0);
        const double v = rng.unit() < 0.5 ? -mag : mag;
        const double t = rng.range(0.05, 8.0);
        const double lhs = p.eval(y, t);
        const double rhs = p.eval(scaled(v, y), t / std::abs(v));
        worst.update(std::abs(lhs - rhs), flatten(y, {v, t}));
    }
    return finish("scaling-variant", worst, kFuzzyTol,
                  "transposed law p(y,t) = p(v y, t/|v|); not enforced");
}

AxiomReport check_scaling_variant(const FuzzySeminorm& p, int sample_count,
                                  std::uint64_t seed) {
    return check_scaling_variant(as_fuzzy_map(p), sample_count, seed);
}

}  // namespace ffp
