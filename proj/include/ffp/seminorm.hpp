#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffp/linalg.hpp"

namespace ffp {

enum class SeminormKind { WeightedAbs, WeightedSup, EllipsoidGauge };

/// A classical seminorm q on R^d with a closed-form gauge; each instance is
/// the Minkowski functional of an absolutely convex neighborhood of the
/// origin. Three kinds are shipped:
///   WeightedAbs     q(y) = weight * |y_axis|
///   WeightedSup     q(y) = max_i weights[i] * |y_i|   (weights >= 0)
///   EllipsoidGauge  q(y) = sqrt(sum (y_i / semi_axes[i])^2)
class Seminorm {
public:
    static Seminorm weighted_abs(std::size_t dim, std::size_t axis, double weight);
    static Seminorm weighted_sup(std::vector<double> weights);
    static Seminorm ellipsoid_gauge(std::vector<double> semi_axes);

    SeminormKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }

    /// Closed-form gauge value. Dimension mismatch raises std::domain_error.
    double operator()(const Point& y) const;

    std::size_t axis() const;                      // WeightedAbs only
    double weight() const;                         // WeightedAbs only
    const std::vector<double>& weights() const;    // WeightedSup only
    const std::vector<double>& semi_axes() const;  // EllipsoidGauge only

    /// True when the seminorm is sensitive to coordinate j (the kernel does
    /// not contain the j-th basis vector).
    bool sees_axis(std::size_t j) const;
    /// True when the kernel is {0}.
    bool is_norm() const;

    std::string describe() const;

    bool operator==(const Seminorm&) const = default;

private:
    Seminorm(SeminormKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

    SeminormKind kind_;
    std::size_t dim_;
    std::size_t axis_ = 0;
    double weight_ = 1.0;
    std::vector<double> coeffs_;  // weights or semi_axes
};

/// inf{ t > 0 : y in t*B } for the unit ball B of the seminorm, computed by
/// bracketing plus bisection on the predicate q(y/t) <= 1 to absolute
/// tolerance tol. Deliberately independent of the closed form so the two
/// routes cross-check each other. Vectors in the kernel give 0.
double minkowski_functional(const Seminorm& b, const Point& y, double tol);

/// Nonempty list of seminorms on a common R^d.
class SeminormFamily {
public:
    explicit SeminormFamily(std::vector<Seminorm> members);

    const std::vector<Seminorm>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    std::size_t dim() const { return members_.front().dim(); }
    const Seminorm& operator[](std::size_t i) const { return members_[i]; }

    bool operator==(const SeminormFamily&) const = default;

private:
    std::vector<Seminorm> members_;
};

/// Result of a separation check. A witness is a nonzero vector with q(y) = 0
/// for every member; finding one is always definitive. `exact` records
/// whether a clean no-witness answer is algebraically certain (a norm member,
/// or axis-aligned kernels with every axis covered) or only holds for the
/// candidates inspected.
struct SeparationCheck {
    bool separating = false;
    bool exact = false;
    std::optional<Point> witness;
};

/// Candidate set for separation scanning: canonical basis vectors followed by
/// a seeded random batch.
std::vector<Point> separation_candidates(std::size_t dim, std::uint64_t seed,
                                         int sample_count);

SeparationCheck is_separating(const SeminormFamily& fam, const std::vector<Point>& candidates);
SeparationCheck is_separating(const SeminormFamily& fam, std::uint64_t seed,
                              int sample_count = 128);

}  // namespace ffp
