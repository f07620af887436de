#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ffp {

enum class TNormKind { StandardIntersection, AlgebraicProduct, BoundedDifference };

/// A continuous t-norm on [0,1]: commutative, associative, monotone, with
/// identity 1 and annihilator 0. Three classical instances are shipped:
/// min(u,v), u*v, and max(0, u+v-1).
class TNorm {
public:
    explicit TNorm(TNormKind kind) : kind_(kind) {}

    TNormKind kind() const { return kind_; }

    /// Scenario-facing name: "min", "product" or "lukasiewicz".
    std::string_view name() const;
    static TNorm from_name(std::string_view name);

    bool operator==(const TNorm&) const = default;

    /// Evaluates the t-norm. Arguments outside [0,1] raise std::domain_error
    /// naming the offending argument.
    double operator()(double u, double v) const;

private:
    TNormKind kind_;
};

/// min is the library-wide default conjunction.
inline TNorm default_tnorm() { return TNorm(TNormKind::StandardIntersection); }

/// Outcome of checking one algebraic axiom by deterministic sampling.
/// passed holds exactly when no witness was found, i.e. when max_violation
/// stayed within the axiom's tolerance.
struct AxiomReport {
    std::string axiom;
    bool passed = true;
    double max_violation = 0.0;
    std::vector<double> witness;  ///< worst offending sample values; empty when passed
    std::string detail;
};

using BinaryOp = std::function<double(double, double)>;

/// Checks the four t-norm axioms (commutativity, associativity, monotonicity,
/// boundary conditions) on a seeded sample set plus the fixed boundary grid
/// {0, 0.25, 0.5, 0.75, 1}^3. Commutativity and the boundary conditions are
/// required exactly; associativity within 1e-12 to absorb re-association
/// rounding. The generic overload lets deliberately broken operations run
/// through the same engine.
std::vector<AxiomReport> check_tnorm_axioms(const BinaryOp& op, int sample_count,
                                            std::uint64_t seed);
std::vector<AxiomReport> check_tnorm_axioms(const TNorm& t, int sample_count,
                                            std::uint64_t seed);

}  // namespace ffp
