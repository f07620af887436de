#include "ffp/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ffp/rng.hpp"

namespace ffp {

namespace {

void check_dim(const Seminorm& q, const Point& y) {
    if (y.size() != q.dim()) {
        std::ostringstream os;
        os << "seminorm: point of dimension " << y.size() << " given to " << q.describe();
        throw std::domain_error(os.str());
    }
}

}  // namespace

Seminorm Seminorm::weighted_abs(std::size_t dim, std::size_t axis, double weight) {
    if (dim < 1) throw std::invalid_argument("weighted_abs: dim must be >= 1");
    if (axis >= dim) throw std::invalid_argument("weighted_abs: axis out of range");
    if (!(weight > 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("weighted_abs: weight must be positive and finite");
    Seminorm q(SeminormKind::WeightedAbs, dim);
    q.axis_ = axis;
    q.weight_ = weight;
    return q;
}

Seminorm Seminorm::weighted_sup(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("weighted_sup: weights must be nonempty");
    for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("weighted_sup: weights must be nonnegative and finite");
    Seminorm q(SeminormKind::WeightedSup, weights.size());
    q.coeffs_ = std::move(weights);
    return q;
}

Seminorm Seminorm::ellipsoid_gauge(std::vector<double> semi_axes) {
    if (semi_axes.empty())
        throw std::invalid_argument("ellipsoid_gauge: semi_axes must be nonempty");
    for (double a : semi_axes)
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("ellipsoid_gauge: semi_axes must be positive and finite");
    Seminorm q(SeminormKind::EllipsoidGauge, semi_axes.size());
    q.coeffs_ = std::move(semi_axes);
    return q;
}

double Seminorm::operator()(const Point& y) const {
    check_dim(*this, y);
    switch (kind_) {
        case SeminormKind::WeightedAbs:
            return weight_ * std::abs(y[axis_]);
        case SeminormKind::WeightedSup: {
            double m = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i)
                m = std::max(m, coeffs_[i] * std::abs(y[i]));
            return m;
        }
        case SeminormKind::EllipsoidGauge: {
            double acc = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                const double r = y[i] / coeffs_[i];
                acc += r * r;
            }
            return std::sqrt(acc);
        }
    }
    throw std::logic_error("seminorm: bad kind");
}

std::size_t Seminorm::axis() const {
    if (kind_ != SeminormKind::WeightedAbs) throw std::logic_error("axis(): not WeightedAbs");
    return axis_;
}

double Seminorm::weight() const {
    if (kind_ != SeminormKind::WeightedAbs) throw std::logic_error("weight(): not WeightedAbs");
    return weight_;
}

const std::vector<double>& Seminorm::weights() const {
    if (kind_ != SeminormKind::WeightedSup) throw std::logic_error("weights(): not WeightedSup");
    return coeffs_;
}

const std::vector<double>& Seminorm::semi_axes() const {
    if (kind_ != SeminormKind::EllipsoidGauge)
        throw std::logic_error("semi_axes(): not EllipsoidGauge");
    return coeffs_;
}

bool Seminorm::sees_axis(std::size_t j) const {
    switch (kind_) {
        case SeminormKind::WeightedAbs: return j == axis_;
        case SeminormKind::WeightedSup: return coeffs_[j] > 0.0;
        case SeminormKind::EllipsoidGauge: return true;
    }
    return false;
}

bool Seminorm::is_norm() const {
    for (std::size_t j = 0; j < dim_; ++j)
        if (!sees_axis(j)) return false;
    // Axis-aligned kinds and the ellipsoid both have kernel {0} exactly when
    // every axis is seen.
    return true;
}

std::string Seminorm::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case SeminormKind::WeightedAbs:
            os << "abs(axis=" << axis_ << ", weight=" << weight_ << ", dim=" << dim_ << ")";
            break;
        case SeminormKind::WeightedSup:
            os << "sup(dim=" << dim_ << ")";
            break;
        case SeminormKind::EllipsoidGauge:
            os << "ellipsoid(dim=" << dim_ << ")";
            break;
    }
    return os.str();
}

double minkowski_functional(const Seminorm& b, const Point& y, double tol) {
    check_dim(b, y);
    if (!(tol > 0.0)) throw std::invalid_argument("minkowski_functional: tol must be positive");

    const auto inside = [&](double t) {
        Point scaled_y(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) scaled_y[i] = y[i] / t;
        return b(scaled_y) <= 1.0;
    };

    // Bracket: grow hi until y lies in hi*B. A vector the gauge cannot see
    // stays inside every t*B, so the infimum is 0.
    double hi = 1.0;
    while (!inside(hi)) {
        hi *= 2.0;
        if (hi > 1e300) throw std::domain_error("minkowski_functional: gauge did not bracket");
    }
    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bisection hit float resolution
        if (inside(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

SeminormFamily::SeminormFamily(std::vector<Seminorm> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("seminorm family must be nonempty");
    for (const auto& q : members_)
        if (q.dim() != members_.front().dim())
            throw std::invalid_argument("seminorm family members must share one dimension");
}

std::vector<Point> separation_candidates(std::size_t dim, std::uint64_t seed,
                                         int sample_count) {
    std::vector<Point> cands;
    for (std::size_t j = 0; j < dim; ++j) cands.push_back(basis_vector(dim, j));
    Rng rng(seed);
    for (int i = 0; i < sample_count; ++i) {
        Point y(dim);
        for (auto& c : y) c = rng.symmetric(5.0);
        cands.push_back(std::move(y));
    }
    return cands;
}

SeparationCheck is_separating(const SeminormFamily& fam, const std::vector<Point>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("is_separating: candidates must be nonempty");

    for (const Point& y : candidates) {
        if (y.size() != fam.dim())
            throw std::domain_error("is_separating: candidate dimension mismatch");
        bool nonzero = false;
        for (double c : y) nonzero = nonzero || c != 0.0;
        if (!nonzero) continue;
        bool invisible = true;
        for (const auto& q : fam.members()) {
            if (q(y) != 0.0) {
                invisible = false;
                break;
            }
        }
        if (invisible) {
            // A concrete nonzero vector every member maps to 0: definitive.
            return SeparationCheck{false, true, y};
        }
    }

    SeparationCheck res;
    res.separating = true;
    // No witness among the candidates. The answer is algebraically exact when
    // some member is a norm, or when all kernels are axis-aligned and every
    // axis is seen by someone (the basis vectors in the candidate set would
    // have produced a witness otherwise).
    bool any_norm = false;
    bool all_axis_aligned = true;
    for (const auto& q : fam.members()) {
        any_norm = any_norm || q.is_norm();
        all_axis_aligned = all_axis_aligned && q.kind() != SeminormKind::EllipsoidGauge;
    }
    bool basis_included = true;
    for (std::size_t j = 0; j < fam.dim(); ++j) {
        bool found = false;
        for (const Point& y : candidates)
            if (y == basis_vector(fam.dim(), j)) {
                found = true;
                break;
            }
        basis_included = basis_included && found;
    }
    res.exact = any_norm || (all_axis_aligned && basis_included);
    return res;
}

SeparationCheck is_separating(const SeminormFamily& fam, std::uint64_t seed, int sample_count) {
    return is_separating(fam, separation_candidates(fam.dim(), seed, sample_count));
}

}  // namespace ffp
