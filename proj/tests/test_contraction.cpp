#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ffp/contraction.hpp"
#include "ffp/errors.hpp"
#include "ffp/fuzzy.hpp"
#include "ffp/linalg.hpp"
#include "ffp/seminorm.hpp"

using namespace ffp;

namespace {

MapSpec halving_map() { return MapSpec::affine(Matrix::from_rows({{0.5}}), {0.0}); }

MapSpec affine2d_map() {
    return MapSpec::affine(Matrix::from_rows({{0.5, 0.1}, {0.0, 0.3}}), {1.0, 1.0});
}

}  // namespace

TEST_CASE("affine map application") {
    CHECK(halving_map().apply({1.0}) == Point{0.5});
    const MapSpec f = affine2d_map();
    CHECK(f.apply({0.0, 0.0}) == Point{1.0, 1.0});
    const Point image = f.apply({2.0, 2.0});
    CHECK(image[0] == doctest::Approx(2.2).epsilon(1e-15));
    CHECK(image[1] == doctest::Approx(1.6).epsilon(1e-15));
}

TEST_CASE("map spec construction and validation") {
    CHECK_THROWS_AS(MapSpec::affine(Matrix::from_rows({{1.0, 0.0}}), {0.0}), ConfigError);
    CHECK_THROWS_AS(MapSpec::affine(Matrix::from_rows({{1.0}}), {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(MapSpec().apply({1.0}), std::logic_error);
    CHECK(MapSpec().dim() == 0);

    CHECK_THROWS_AS(MapSpec::registered("no_such_map", 1), ConfigError);
    CHECK_THROWS_AS(MapSpec::registered("scalar_cos_half", 2), ConfigError);  // wrong dimension

    const MapSpec cosine = MapSpec::registered("scalar_cos_half", 1);
    CHECK(cosine.apply({0.0}) == Point{0.5});
    const MapSpec atan_any = MapSpec::registered("componentwise_atan_half", 3);
    CHECK(atan_any.apply({0.0, 0.0, 0.0}) == Point{0.0, 0.0, 0.0});

    CHECK(halving_map() == halving_map());
    CHECK_FALSE(halving_map() == cosine);
}

TEST_CASE("registry lists its maps") {
    const auto& names = registered_map_names();
    CHECK(names.size() == 2);
    for (const auto& name : names) CHECK(find_registered_map(name).fn != nullptr);
    CHECK_THROWS_AS(find_registered_map("missing"), ConfigError);
}

TEST_CASE("operator lipschitz closed forms") {
    const Seminorm abs1 = Seminorm::weighted_abs(1, 0, 1.0);
    const LipschitzEstimate scalar = operator_lipschitz(halving_map(), abs1, 64, 1);
    CHECK(scalar.value == 0.5);
    CHECK(scalar.certified);
    CHECK(scalar.method == "diagonal");

    const Seminorm sup = Seminorm::weighted_sup({1.0, 1.0});
    const LipschitzEstimate rowsum = operator_lipschitz(affine2d_map(), sup, 64, 1);
    CHECK(rowsum.value == 0.6);  // max weighted row sum: max(0.5 + 0.1, 0.3)
    CHECK(rowsum.certified);
    CHECK(rowsum.method == "weighted-row-sum");

    const MapSpec ident = MapSpec::affine(Matrix::identity(2), {0.0, 0.0});
    CHECK(operator_lipschitz(ident, sup, 64, 1).value == 1.0);
}

TEST_CASE("operator lipschitz for the ellipsoid gauge matches the spectral norm") {
    const Seminorm ell = Seminorm::ellipsoid_gauge({1.0, 1.0});
    const LipschitzEstimate est = operator_lipschitz(affine2d_map(), ell, 64, 1);
    // Largest eigenvalue of A^T A solved by hand from the characteristic
    // polynomial: lambda^2 - 0.35 lambda + 0.0225.
    const double lambda_max = (0.35 + std::sqrt(0.35 * 0.35 - 4.0 * 0.0225)) / 2.0;
    CHECK(lambda_max == doctest::Approx(0.26513878188659973).epsilon(1e-15));
    const double sigma = std::sqrt(lambda_max);
    CHECK(est.value >= sigma);  // certified estimates are upper bounds
    CHECK(est.value <= sigma * (1.0 + 1e-8));
    CHECK(est.method == "power-iteration");

    // Anisotropic axes on a diagonal map leave the scaled spectral norm at
    // the largest diagonal entry.
    const MapSpec diag = MapSpec::affine(Matrix::from_rows({{0.5, 0.0}, {0.0, 0.25}}), {0.0, 0.0});
    const Seminorm skew = Seminorm::ellipsoid_gauge({2.0, 1.0});
    const LipschitzEstimate d = operator_lipschitz(diag, skew, 64, 1);
    CHECK(d.value >= 0.5);
    CHECK(d.value <= 0.5 * (1.0 + 1e-8));
}

TEST_CASE("kernel preservation is required and quotient constants are exact") {
    const Seminorm abs0 = Seminorm::weighted_abs(2, 0, 1.0);
    // A e_1 has a visible first coordinate: the kernel leaks.
    const MapSpec leaking =
        MapSpec::affine(Matrix::from_rows({{0.5, 0.3}, {0.0, 0.2}}), {0.0, 0.0});
    CHECK_THROWS_AS(operator_lipschitz(leaking, abs0, 64, 1), CertificationRefusedError);

    // Kernel-preserving variant: the invisible axis may do anything.
    const MapSpec quotient =
        MapSpec::affine(Matrix::from_rows({{0.5, 0.0}, {0.7, 0.2}}), {0.0, 0.0});
    const LipschitzEstimate est = operator_lipschitz(quotient, abs0, 64, 1);
    CHECK(est.value == 0.5);
    CHECK(est.certified);

    // Same story for a sup seminorm with a zero weight.
    const Seminorm partial = Seminorm::weighted_sup({1.0, 0.0});
    const MapSpec other = MapSpec::affine(Matrix::from_rows({{0.5, 0.0}, {0.3, 0.8}}), {0.0, 0.0});
    CHECK(operator_lipschitz(other, partial, 64, 1).value == 0.5);

    // Registered maps cannot be certified at all.
    CHECK_THROWS_AS(operator_lipschitz(MapSpec::registered("scalar_cos_half", 1),
                                       Seminorm::weighted_abs(1, 0, 1.0), 64, 1),
                    CertificationRefusedError);
}

TEST_CASE("sampled lipschitz is a lower bound consistent with the certified value") {
    const Seminorm sup = Seminorm::weighted_sup({1.0, 1.0});
    const double sampled = sampled_lipschitz(affine2d_map(), sup, 4000, 11);
    CHECK(sampled <= 0.6 * (1.0 + 1e-12));
    CHECK(sampled > 0.55);

    const MapSpec cosine = MapSpec::registered("scalar_cos_half", 1);
    const double cos_l = sampled_lipschitz(cosine, Seminorm::weighted_abs(1, 0, 1.0), 4000, 11);
    CHECK(cos_l <= 0.5 + 1e-9);  // |F'| = |0.5 sin| never exceeds 1/2
    CHECK(cos_l > 0.45);         // and the bound is nearly attained near pi/2
}

TEST_CASE("certificate invariant and the spec'd example pair") {
    ContractionCertificate cert;
    cert.epsilon = 1.0;
    cert.alpha = 0.5;
    cert.delta = 0.25;
    cert.beta = 0.1;
    cert.lipschitz = 0.5;
    CHECK(cert.holds());  // (1.25)(0.6)/0.4 = 1.875 <= 0.5/(0.5*0.5) = 2

    cert.delta = 1.1;  // pushes the left side past the cap
    CHECK_FALSE(cert.holds());
    cert.delta = 0.25;
    cert.beta = 0.55;  // alpha + beta >= 1
    CHECK_FALSE(cert.holds());
}

TEST_CASE("derived certificate for the halving map") {
    const ContractionCertificate cert =
        certify_affine_contraction(halving_map(), Seminorm::weighted_abs(1, 0, 1.0), 1.0, 0.5);
    CHECK(cert.lipschitz == 0.5);
    CHECK(cert.beta == doctest::Approx(0.05).epsilon(1e-15));
    // Maximal delta for beta = 0.05 is eps*(0.5*0.45/(0.25*0.55) - 1) = 7/11,
    // shaved by the 1e-9 rounding guard.
    CHECK(cert.delta == doctest::Approx(7.0 / 11.0).epsilon(1e-8));
    CHECK(cert.delta < 7.0 / 11.0);
    CHECK(cert.holds());

    // The invariant is tight at the unshaved maximum.
    const double dmax = certificate_max_delta(1.0, 0.5, 0.05, 0.5);
    CHECK(dmax == doctest::Approx(7.0 / 11.0).epsilon(1e-14));
    const double lhs = (1.0 + dmax) * 0.55 / 0.45;
    const double rhs = 1.0 * 0.5 / (0.5 * 0.5);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("shrinking beta strictly increases the admissible delta") {
    double previous = certificate_max_delta(1.0, 0.5, 0.4, 0.5);
    for (double beta : {0.3, 0.2, 0.1, 0.05, 0.01, 0.001}) {
        const double dmax = certificate_max_delta(1.0, 0.5, beta, 0.5);
        CHECK(dmax > previous);
        previous = dmax;
    }
    CHECK(certificate_max_delta(1.0, 0.5, 0.1, 0.0) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("certification refuses non-contractions and degenerate inputs") {
    const MapSpec ident = MapSpec::affine(Matrix::identity(1), {0.0});
    const Seminorm abs1 = Seminorm::weighted_abs(1, 0, 1.0);
    try {
        certify_affine_contraction(ident, abs1, 1.0, 0.5);
        FAIL("expected NotAContractionError");
    } catch (const NotAContractionError& e) {
        CHECK(e.lipschitz() == 1.0);
    }
    CHECK_THROWS_AS(certify_affine_contraction(halving_map(), abs1, -1.0, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(certify_affine_contraction(halving_map(), abs1, 1.0, 1.5),
                    std::invalid_argument);
}

TEST_CASE("constant maps certify with the trivial lipschitz constant") {
    const MapSpec constant = MapSpec::affine(Matrix::from_rows({{0.0}}), {3.0});
    const ContractionCertificate cert =
        certify_affine_contraction(constant, Seminorm::weighted_abs(1, 0, 1.0), 2.0, 0.25);
    CHECK(cert.lipschitz == 0.0);
    CHECK(cert.delta == 2.0);
    CHECK(cert.holds());
}

TEST_CASE("pointwise contractive check on explicit pairs") {
    const FuzzySeminorm p(Seminorm::weighted_abs(1, 0, 1.0));

    // Spec'd pair: before = 1.1/3.1, after = 0.5, strict increase.
    const ContractiveCheck one =
        check_contractive(halving_map(), p, 1.0, 0.1, {{{2.0}, {0.0}}});
    CHECK(one.passed);
    CHECK(one.pairs_checked == 1);
    CHECK(one.min_margin == doctest::Approx(0.5 - 1.1 / 3.1).epsilon(1e-12));

    // Equal points sit at membership 1 on both sides.
    const ContractiveCheck same =
        check_contractive(halving_map(), p, 1.0, 0.1, {{{2.0}, {2.0}}});
    CHECK(same.passed);

    // The identity map can never strictly improve.
    const MapSpec ident = MapSpec::affine(Matrix::identity(1), {0.0});
    const ContractiveCheck bad = check_contractive(ident, p, 1.0, 0.1, {{{1.0}, {0.0}}});
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.violation.has_value());
    CHECK(bad.sampled_not_proven);
}

TEST_CASE("certified maps pass the contractive check on threshold-straddling pairs") {
    const Seminorm abs1 = Seminorm::weighted_abs(1, 0, 1.0);
    const FuzzySeminorm p(abs1);
    const ContractionCertificate cert =
        certify_affine_contraction(halving_map(), abs1, 1.0, 0.5);

    // Pairs concentrated around the annulus where the hypothesis is active.
    const double t_hyp = cert.epsilon + cert.delta;
    const double radius = t_hyp * cert.alpha / (1.0 - cert.alpha);
    auto pairs = threshold_pairs(abs1, radius, 2000, 99);
    const auto wide = threshold_pairs(abs1, 10.0, 2000, 100);
    pairs.insert(pairs.end(), wide.begin(), wide.end());

    const ContractiveCheck check =
        check_contractive(halving_map(), p, cert.epsilon, cert.delta, pairs);
    CHECK(check.passed);
    CHECK(check.pairs_checked == 4000);

    const ImplicationCheck imp = check_certificate(halving_map(), p, cert, pairs);
    CHECK(imp.passed);
    CHECK(imp.hypothesis_hits > 0);      // the annulus was actually exercised
    CHECK(imp.upper_cap_excluded > 0);   // and the upper cap did bind for close pairs
}

TEST_CASE("threshold pairs straddle the requested radius deterministically") {
    const Seminorm sup = Seminorm::weighted_sup({1.0, 2.0});
    const auto pairs = threshold_pairs(sup, 1.5, 300, 7);
    REQUIRE(pairs.size() == 300);
    bool below = false;
    bool above = false;
    for (const auto& [y, z] : pairs) {
        const double gap = sup(subtract(y, z));
        CHECK(gap >= 1.5 / 4.0 * (1.0 - 1e-9));
        CHECK(gap <= 1.5 * 4.0 * (1.0 + 1e-9));
        below = below || gap < 1.5;
        above = above || gap > 1.5;
    }
    CHECK(below);
    CHECK(above);
    CHECK(pairs == threshold_pairs(sup, 1.5, 300, 7));
}
