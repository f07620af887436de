#include "ffp/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ffp/errors.hpp"
#include "ffp/rng.hpp"

namespace ffp {

namespace {

Point sample_point(Rng& rng, std::size_t dim, double radius) {
    Point y(dim);
    for (auto& c : y) c = rng.symmetric(radius);
    return y;
}

double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double l2_norm(const Point& a) { return std::sqrt(dot(a, a)); }

const std::map<std::string, RegisteredMap>& registry() {
    static const std::map<std::string, RegisteredMap> maps = {
        {"scalar_cos_half",
         {1,
          [](const Point& y) {
              return Point{0.5 * std::cos(y[0])};
          },
          "y -> 0.5*cos(y) on R"}},
        {"componentwise_atan_half",
         {0,
          [](const Point& y) {
              Point out(y.size());
              for (std::size_t i = 0; i < y.size(); ++i) out[i] = 0.5 * std::atan(y[i]);
              return out;
          },
          "y_i -> 0.5*atan(y_i), any dimension"}},
    };
    return maps;
}

}  // namespace

const std::vector<std::string>& registered_map_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, entry] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

const RegisteredMap& find_registered_map(const std::string& name) {
    const auto& maps = registry();
    auto it = maps.find(name);
    if (it == maps.end()) {
        std::ostringstream msg;
        msg << "unknown registered map '" << name << "'; available:";
        for (const auto& known : registered_map_names()) msg << " " << known;
        throw ConfigError(msg.str());
    }
    return it->second;
}

MapSpec MapSpec::affine(Matrix a, Point b) {
    if (a.rows() != a.cols()) throw ConfigError("affine map needs a square matrix");
    if (a.rows() == 0) throw ConfigError("affine map needs a nonzero dimension");
    if (a.rows() != b.size()) throw ConfigError("affine map: matrix/offset dimension mismatch");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!std::isfinite(a(i, j))) throw ConfigError("affine map: non-finite matrix entry");
    if (!all_finite(b)) throw ConfigError("affine map: non-finite offset entry");
    MapSpec spec;
    spec.dim_ = a.rows();
    spec.impl_ = AffineMap{std::move(a), std::move(b)};
    return spec;
}

MapSpec MapSpec::registered(std::string name, std::size_t dim) {
    const RegisteredMap& entry = find_registered_map(name);
    if (dim == 0) throw ConfigError("registered map needs a nonzero dimension");
    if (entry.dim != 0 && entry.dim != dim) {
        std::ostringstream msg;
        msg << "registered map '" << name << "' requires dimension " << entry.dim << ", got "
            << dim;
        throw ConfigError(msg.str());
    }
    MapSpec spec;
    spec.dim_ = dim;
    spec.impl_ = std::move(name);
    return spec;
}

const AffineMap& MapSpec::affine_form() const {
    if (!is_affine()) throw std::logic_error("MapSpec: not an affine map");
    return std::get<AffineMap>(impl_);
}

const std::string& MapSpec::registered_name() const {
    if (!is_registered()) throw std::logic_error("MapSpec: not a registered map");
    return std::get<std::string>(impl_);
}

Point MapSpec::apply(const Point& y) const {
    if (dim_ == 0) throw std::logic_error("MapSpec: empty map cannot be applied");
    if (y.size() != dim_) throw std::invalid_argument("MapSpec::apply: dimension mismatch");
    if (const auto* aff = std::get_if<AffineMap>(&impl_)) {
        Point out = aff->a.apply(y);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += aff->b[i];
        return out;
    }
    return find_registered_map(std::get<std::string>(impl_)).fn(y);
}

std::string MapSpec::describe() const {
    if (dim_ == 0) return "empty map";
    std::ostringstream out;
    if (is_affine()) {
        out << "affine map on R^" << dim_;
    } else {
        out << "registered map '" << registered_name() << "' on R^" << dim_;
    }
    return out.str();
}

namespace {

// Axes spanning ker q, empty for definite gauges. Exact for all three kinds.
std::vector<std::size_t> kernel_axes(const Seminorm& q) {
    std::vector<std::size_t> axes;
    for (std::size_t j = 0; j < q.dim(); ++j)
        if (!q.sees_axis(j)) axes.push_back(j);
    return axes;
}

void require_kernel_preserved(const Matrix& a, const Seminorm& q, int sample_count,
                              std::uint64_t seed) {
    const auto axes = kernel_axes(q);
    if (axes.empty()) return;
    for (std::size_t j : axes) {
        const double image = q(a.apply(basis_vector(q.dim(), j)));
        if (image != 0.0) {
            std::ostringstream msg;
            msg << "linear part does not preserve ker q for " << q.describe() << ": q(A e_" << j
                << ") = " << image;
            throw CertificationRefusedError(msg.str());
        }
    }
    // Basis axes passing exactly forces the relevant columns to zero, so
    // random kernel vectors cannot fail; keep the sampled sweep as a guard.
    Rng rng(seed);
    for (int s = 0; s < sample_count; ++s) {
        Point k = zeros(q.dim());
        for (std::size_t j : axes) k[j] = rng.symmetric(3.0);
        const double image = q(a.apply(k));
        if (image != 0.0) {
            std::ostringstream msg;
            msg << "linear part does not preserve ker q for " << q.describe()
                << " on a sampled kernel vector: q(A k) = " << image;
            throw CertificationRefusedError(msg.str());
        }
    }
}

double power_iteration_sigma(const Matrix& b, Rng& rng) {
    const std::size_t d = b.rows();
    const Matrix m = b.transpose().multiply(b);
    double best = 0.0;
    for (int restart = 0; restart < 3; ++restart) {
        Point v = sample_point(rng, d, 1.0);
        double nv = l2_norm(v);
        if (nv == 0.0) continue;
        for (auto& c : v) c /= nv;
        double lambda = 0.0;
        for (int iter = 0; iter < 200000; ++iter) {
            Point mv = m.apply(v);
            const double nmv = l2_norm(mv);
            if (nmv == 0.0) {
                lambda = 0.0;
                break;
            }
            for (auto& c : mv) c /= nmv;
            v = std::move(mv);
            const double next = dot(v, m.apply(v));
            if (std::abs(next - lambda) <= 1e-13 * std::max(1.0, std::abs(next))) {
                lambda = next;
                break;
            }
            lambda = next;
        }
        best = std::max(best, lambda);
    }
    return std::sqrt(std::max(best, 0.0));
}

}  // namespace

LipschitzEstimate operator_lipschitz(const MapSpec& f, const Seminorm& q, int sample_count,
                                     std::uint64_t seed) {
    if (!f.is_affine())
        throw CertificationRefusedError(
            "operator_lipschitz needs an affine map; use sampled_lipschitz for registered maps");
    if (f.dim() != q.dim())
        throw std::invalid_argument("operator_lipschitz: map/seminorm dimension mismatch");
    if (sample_count < 0) throw std::invalid_argument("operator_lipschitz: negative sample count");
    const Matrix& a = f.affine_form().a;
    require_kernel_preserved(a, q, sample_count, seed);

    switch (q.kind()) {
        case SeminormKind::WeightedAbs: {
            const std::size_t i = q.axis();
            return {std::abs(a(i, i)), true, "diagonal"};
        }
        case SeminormKind::WeightedSup: {
            const auto& w = q.weights();
            double worst = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] == 0.0) continue;
                double row = 0.0;
                for (std::size_t j = 0; j < w.size(); ++j)
                    if (w[j] != 0.0) row += w[i] * std::abs(a(i, j)) / w[j];
                worst = std::max(worst, row);
            }
            return {worst, true, "weighted-row-sum"};
        }
        case SeminormKind::EllipsoidGauge: {
            const auto& ax = q.semi_axes();
            Matrix scaled(q.dim(), q.dim());
            for (std::size_t i = 0; i < q.dim(); ++i)
                for (std::size_t j = 0; j < q.dim(); ++j) scaled(i, j) = a(i, j) * ax[j] / ax[i];
            Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
            const double sigma = power_iteration_sigma(scaled, rng);
            return {sigma * (1.0 + 1e-9), true, "power-iteration"};
        }
    }
    throw std::logic_error("operator_lipschitz: unreachable seminorm kind");
}

double sampled_lipschitz(const MapSpec& f, const Seminorm& q, int sample_count,
                         std::uint64_t seed) {
    if (f.dim() != q.dim())
        throw std::invalid_argument("sampled_lipschitz: map/seminorm dimension mismatch");
    if (sample_count <= 0) throw std::invalid_argument("sampled_lipschitz: sample count must be positive");
    Rng rng(seed);
    double best = 0.0;
    for (int s = 0; s < sample_count; ++s) {
        const Point y = sample_point(rng, q.dim(), 4.0);
        Point z;
        // Wide pairs probe global ratios, tight pairs local slope.
        if (s % 2 == 0) {
            z = sample_point(rng, q.dim(), 4.0);
        } else {
            z = add(y, sample_point(rng, q.dim(), 1e-3));
        }
        const double gap = q(subtract(y, z));
        if (gap <= 1e-12) continue;
        best = std::max(best, q(subtract(f.apply(y), f.apply(z))) / gap);
    }
    return best;
}

bool ContractionCertificate::holds() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) return false;
    if (!(alpha > 0.0 && alpha < 1.0)) return false;
    if (!(delta > 0.0) || !std::isfinite(delta)) return false;
    if (!(beta > 0.0)) return false;
    if (!(alpha + beta < 1.0)) return false;
    if (!(lipschitz >= 0.0 && lipschitz < 1.0)) return false;
    if (lipschitz == 0.0) return true;
    const double lhs = (epsilon + delta) * (alpha + beta) / (1.0 - alpha - beta);
    const double rhs = epsilon * alpha / (lipschitz * (1.0 - alpha));
    return lhs <= rhs;
}

double certificate_max_delta(double epsilon, double alpha, double beta, double lipschitz) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("certificate_max_delta: epsilon must be positive and finite");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("certificate_max_delta: alpha must lie in (0,1)");
    if (!(beta > 0.0 && alpha + beta < 1.0))
        throw std::invalid_argument("certificate_max_delta: need beta > 0 and alpha + beta < 1");
    if (!(lipschitz >= 0.0 && lipschitz < 1.0))
        throw std::invalid_argument("certificate_max_delta: lipschitz must lie in [0,1)");
    if (lipschitz == 0.0) return std::numeric_limits<double>::infinity();
    return epsilon * alpha * (1.0 - alpha - beta) / (lipschitz * (1.0 - alpha) * (alpha + beta)) -
           epsilon;
}

ContractionCertificate certify_affine_contraction(const MapSpec& f, const Seminorm& q,
                                                  double epsilon, double alpha, int sample_count,
                                                  std::uint64_t seed) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("certify_affine_contraction: epsilon must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("certify_affine_contraction: alpha must lie in (0,1)");

    const LipschitzEstimate est = operator_lipschitz(f, q, sample_count, seed);
    if (!est.certified)
        throw CertificationRefusedError("certify_affine_contraction: estimate not certified");
    const double lips = est.value;
    if (lips >= 1.0) {
        std::ostringstream msg;
        msg << "map is not a fuzzy B-contraction for " << q.describe()
            << ": certified Lipschitz constant " << lips << " >= 1";
        throw NotAContractionError(lips, msg.str());
    }

    ContractionCertificate cert;
    cert.epsilon = epsilon;
    cert.alpha = alpha;
    cert.lipschitz = lips;
    if (lips == 0.0) {
        cert.beta = 0.1 * (1.0 - alpha);
        cert.delta = epsilon;
    } else {
        const double beta_crit =
            alpha * (1.0 - alpha) * (1.0 - lips) / (alpha + lips * (1.0 - alpha));
        cert.beta = std::min(0.1 * (1.0 - alpha), 0.5 * beta_crit);
        cert.delta = certificate_max_delta(epsilon, alpha, cert.beta, lips) * (1.0 - 1e-9);
    }
    if (!cert.holds())
        throw std::logic_error("certify_affine_contraction: derived certificate fails its invariant");
    return cert;
}

ContractiveCheck check_contractive(const MapSpec& f, const FuzzySeminorm& p, double epsilon,
                                   double delta,
                                   const std::vector<std::pair<Point, Point>>& pairs) {
    if (!(epsilon > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("check_contractive: epsilon and delta must be positive");
    if (f.dim() != p.dim())
        throw std::invalid_argument("check_contractive: map/seminorm dimension mismatch");

    ContractiveCheck report;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& [y, z] : pairs) {
        if (y.size() != f.dim() || z.size() != f.dim())
            throw std::invalid_argument("check_contractive: pair dimension mismatch");
        ++report.pairs_checked;
        const double before = p(subtract(y, z), epsilon + delta);
        const double after = p(subtract(f.apply(y), f.apply(z)), epsilon);
        if (before == 1.0) {
            if (after != 1.0) {
                report.passed = false;
                if (!report.violation) report.violation = {y, z};
            }
            continue;
        }
        report.min_margin = std::min(report.min_margin, after - before);
        if (!(after > before)) {
            report.passed = false;
            if (!report.violation) report.violation = {y, z};
        }
    }
    return report;
}

ImplicationCheck check_certificate(const MapSpec& f, const FuzzySeminorm& p,
                                   const ContractionCertificate& cert,
                                   const std::vector<std::pair<Point, Point>>& pairs) {
    if (f.dim() != p.dim())
        throw std::invalid_argument("check_certificate: map/seminorm dimension mismatch");
    const double hyp_low = 1.0 - (cert.alpha + cert.beta);
    const double hyp_high = 1.0 - cert.alpha;

    ImplicationCheck report;
    for (const auto& [y, z] : pairs) {
        if (y.size() != f.dim() || z.size() != f.dim())
            throw std::invalid_argument("check_certificate: pair dimension mismatch");
        ++report.pairs_checked;
        const double membership = p(subtract(y, z), cert.epsilon + cert.delta);
        if (membership > hyp_high) {
            ++report.upper_cap_excluded;
            continue;
        }
        if (!(membership > hyp_low)) continue;
        ++report.hypothesis_hits;
        const double after = p(subtract(f.apply(y), f.apply(z)), cert.epsilon);
        if (!(after > 1.0 - cert.alpha)) {
            report.passed = false;
            if (!report.violation) report.violation = {y, z};
        }
    }
    return report;
}

std::vector<std::pair<Point, Point>> threshold_pairs(const Seminorm& q, double radius, int count,
                                                     std::uint64_t seed) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("threshold_pairs: radius must be positive and finite");
    if (count < 0) throw std::invalid_argument("threshold_pairs: negative count");

    Rng rng(seed);
    std::vector<std::pair<Point, Point>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Point z = sample_point(rng, q.dim(), 4.0);
        Point dir;
        double gauge = 0.0;
        for (int tries = 0; tries < 64 && gauge <= 1e-9; ++tries) {
            dir = sample_point(rng, q.dim(), 1.0);
            gauge = q(dir);
        }
        if (gauge <= 1e-9) {
            for (std::size_t j = 0; j < q.dim(); ++j) {
                dir = basis_vector(q.dim(), j);
                gauge = q(dir);
                if (gauge > 0.0) break;
            }
        }
        // Log-spread the classical distance across [radius/4, 4*radius].
        const double r = radius * std::exp(std::log(4.0) * rng.range(-1.0, 1.0));
        out.emplace_back(add(z, scaled(r / gauge, dir)), std::move(z));
    }
    return out;
}

}  // namespace ffp
