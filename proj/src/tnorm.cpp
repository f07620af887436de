#include "ffp/tnorm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "ffp/errors.hpp"
#include "ffp/rng.hpp"

namespace ffp {

namespace {

void require_unit_interval(double x, const char* arg) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string("tnorm: argument ") + arg + " = " +
                                std::to_string(x) + " is outside [0,1]");
}

constexpr double kAssociativityTol = 1e-12;

}  // namespace

std::string_view TNorm::name() const {
    switch (kind_) {
        case TNormKind::StandardIntersection: return "min";
        case TNormKind::AlgebraicProduct: return "product";
        case TNormKind::BoundedDifference: return "lukasiewicz";
    }
    return "?";
}

TNorm TNorm::from_name(std::string_view name) {
    if (name == "min") return TNorm(TNormKind::StandardIntersection);
    if (name == "product") return TNorm(TNormKind::AlgebraicProduct);
    if (name == "lukasiewicz") return TNorm(TNormKind::BoundedDifference);
    throw ConfigError("unknown t-norm '" + std::string(name) +
                      "' (expected min, product or lukasiewicz)");
}

double TNorm::operator()(double u, double v) const {
    require_unit_interval(u, "u");
    require_unit_interval(v, "v");
    switch (kind_) {
        case TNormKind::StandardIntersection: return std::min(u, v);
        case TNormKind::AlgebraicProduct: return u * v;
        case TNormKind::BoundedDifference: return std::max(0.0, u + v - 1.0);
    }
    throw std::logic_error("tnorm: bad kind");
}

namespace {

struct Violation {
    double magnitude = 0.0;
    std::array<double, 3> at{0.0, 0.0, 0.0};

    void update(double mag, double u, double v, double w) {
        if (mag > magnitude) {
            magnitude = mag;
            at = {u, v, w};
        }
    }
};

AxiomReport finish(std::string axiom, const Violation& worst, double tol, std::string detail) {
    AxiomReport rep;
    rep.axiom = std::move(axiom);
    rep.max_violation = worst.magnitude;
    rep.passed = worst.magnitude <= tol;
    if (!rep.passed) rep.witness.assign(worst.at.begin(), worst.at.end());
    rep.detail = std::move(detail);
    return rep;
}

}  // namespace

std::vector<AxiomReport> check_tnorm_axioms(const BinaryOp& op, int sample_count,
                                            std::uint64_t seed) {
    if (sample_count < 1)
        throw std::invalid_argument("check_tnorm_axioms: sample_count must be >= 1");

    // Fixed boundary grid first, then the seeded stream.
    std::vector<std::array<double, 3>> triples;
    const std::array<double, 5> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    for (double u : grid)
        for (double v : grid)
            for (double w : grid) triples.push_back({u, v, w});
    Rng rng(seed);
    for (int i = 0; i < sample_count; ++i)
        triples.push_back({rng.unit(), rng.unit(), rng.unit()});

    Violation commutativity, associativity, monotonicity, boundary;
    for (const auto& [u, v, w] : triples) {
        commutativity.update(std::abs(op(u, v) - op(v, u)), u, v, w);
        associativity.update(std::abs(op(u, op(v, w)) - op(op(u, v), w)), u, v, w);
        const double lo = std::min(v, w), hi = std::max(v, w);
        monotonicity.update(std::max(0.0, op(u, lo) - op(u, hi)), u, lo, hi);
        boundary.update(std::abs(op(u, 1.0) - u), u, 1.0, 0.0);
        boundary.update(std::abs(op(u, 0.0)), u, 0.0, 0.0);
    }

    std::vector<AxiomReport> reports;
    reports.push_back(finish("commutativity", commutativity, 0.0,
                             "|op(u,v) - op(v,u)| over samples"));
    reports.push_back(finish("associativity", associativity, kAssociativityTol,
                             "|op(u,op(v,w)) - op(op(u,v),w)| over samples"));
    reports.push_back(finish("monotonicity", monotonicity, 0.0,
                             "op(u,v) <= op(u,w) for v <= w over samples"));
    reports.push_back(finish("boundary", boundary, 0.0,
                             "op(u,1) = u and op(u,0) = 0 over samples"));
    return reports;
}

std::vector<AxiomReport> check_tnorm_axioms(const TNorm& t, int sample_count,
                                            std::uint64_t seed) {
    return check_tnorm_axioms(BinaryOp(t), sample_count, seed);
}

}  // namespace ffp
