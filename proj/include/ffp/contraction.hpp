#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ffp/fuzzy.hpp"
#include "ffp/linalg.hpp"
#include "ffp/seminorm.hpp"

namespace ffp {

struct AffineMap {
    Matrix a;
    Point b;

    bool operator==(const AffineMap&) const = default;
};

/// A named pure self-map of R^d available to scenario files.
struct RegisteredMap {
    std::size_t dim;  ///< required dimension; 0 means any
    std::function<Point(const Point&)> fn;
    std::string summary;
};

const std::vector<std::string>& registered_map_names();
const RegisteredMap& find_registered_map(const std::string& name);

/// The self-map F whose fixed point is sought: affine A*y + b, or a function
/// from the registry referenced by name. Default-constructed specs are empty
/// (dim 0) and cannot be applied.
class MapSpec {
public:
    MapSpec() = default;

    static MapSpec affine(Matrix a, Point b);
    static MapSpec registered(std::string name, std::size_t dim);

    std::size_t dim() const { return dim_; }
    bool is_affine() const { return std::holds_alternative<AffineMap>(impl_); }
    bool is_registered() const { return std::holds_alternative<std::string>(impl_); }
    const AffineMap& affine_form() const;
    const std::string& registered_name() const;

    Point apply(const Point& y) const;
    std::string describe() const;

    bool operator==(const MapSpec&) const = default;

private:
    struct Empty {
        bool operator==(const Empty&) const = default;
    };

    std::variant<Empty, AffineMap, std::string> impl_;
    std::size_t dim_ = 0;
};

/// Upper or lower estimate of sup{ q(A d) / q(d) : q(d) != 0 }.
/// `certified` marks analytic upper bounds usable for certification; sampled
/// estimates are lower bounds and never certify.
struct LipschitzEstimate {
    double value = 0.0;
    bool certified = false;
    std::string method;
};

/// Lipschitz constant of an affine map relative to q. Requires the linear
/// part to preserve the kernel of q (checked on kernel basis vectors and a
/// seeded batch; violation raises CertificationRefusedError). All three
/// seminorm kinds admit closed forms:
///   WeightedAbs     |A[axis][axis]|           (kernel preservation zeroes the rest of the row)
///   WeightedSup     weighted max row sum over seen axes
///   EllipsoidGauge  scaled spectral norm by power iteration, inflated 1e-9
LipschitzEstimate operator_lipschitz(const MapSpec& f, const Seminorm& q, int sample_count,
                                     std::uint64_t seed);

/// Sampled supremum of q(F(y)-F(z))/q(y-z) over seeded pairs. A lower bound
/// for any map; the only estimate available for registered maps.
double sampled_lipschitz(const MapSpec& f, const Seminorm& q, int sample_count,
                         std::uint64_t seed);

/// Witness that an affine map contracts relative to one seminorm: for the
/// given (epsilon, alpha) the pair (delta, beta) makes the implication
///   1-alpha >= p(y-z, eps+delta) > 1-(alpha+beta)  =>  p(F(y)-F(z), eps) > 1-alpha
/// hold for ALL y, z under the standard fuzzy construction, via
///   (eps+delta)(alpha+beta)/(1-alpha-beta) <= eps*alpha/(L(1-alpha)).
struct ContractionCertificate {
    std::size_t seminorm_index = 0;
    double epsilon = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    double beta = 0.0;
    double lipschitz = 0.0;

    /// The defining inequality (trivially true for constant maps, L = 0).
    bool holds() const;
};

/// Largest delta compatible with the certificate inequality at a fixed beta;
/// infinity when lipschitz = 0. Strictly decreasing in beta.
double certificate_max_delta(double epsilon, double alpha, double beta, double lipschitz);

/// Produces a certificate with beta = min(0.1(1-alpha), beta_crit/2) and
/// delta maximal for that beta (shaved by 1e-9 relative for rounding).
/// L >= 1 raises NotAContractionError carrying the estimate.
ContractionCertificate certify_affine_contraction(const MapSpec& f, const Seminorm& q,
                                                  double epsilon, double alpha,
                                                  int sample_count = 256,
                                                  std::uint64_t seed = 0);

/// Pointwise strict-improvement check on explicit pairs:
/// p(F(y)-F(z), eps) > p(y-z, eps+delta) whenever the latter is not 1, and
/// membership 1 must be reproduced exactly when it is. Sampled, not proven.
struct ContractiveCheck {
    bool passed = true;
    std::size_t pairs_checked = 0;
    std::optional<std::pair<Point, Point>> violation;
    double min_margin = 0.0;  ///< min of p(F(y)-F(z),eps) - p(y-z,eps+delta) off membership 1
    bool sampled_not_proven = true;
};

ContractiveCheck check_contractive(const MapSpec& f, const FuzzySeminorm& p, double epsilon,
                                   double delta,
                                   const std::vector<std::pair<Point, Point>>& pairs);

/// Empirical check of the certificate implication on explicit pairs. The
/// hypothesis is the annulus 1-alpha >= p(y-z, eps+delta) > 1-(alpha+beta);
/// pairs rejected only by the upper bound are counted so it is visible when
/// that cap is the binding constraint.
struct ImplicationCheck {
    bool passed = true;
    std::size_t pairs_checked = 0;
    std::size_t hypothesis_hits = 0;
    std::size_t upper_cap_excluded = 0;
    std::optional<std::pair<Point, Point>> violation;
};

ImplicationCheck check_certificate(const MapSpec& f, const FuzzySeminorm& p,
                                   const ContractionCertificate& cert,
                                   const std::vector<std::pair<Point, Point>>& pairs);

/// Seeded pairs (y, z) whose classical distance q(y-z) log-spreads across
/// [radius/4, 4*radius], for exercising threshold regions.
std::vector<std::pair<Point, Point>> threshold_pairs(const Seminorm& q, double radius,
                                                     int count, std::uint64_t seed);

}  // namespace ffp
