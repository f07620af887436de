#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ffp/errors.hpp"
#include "ffp/tnorm.hpp"

using namespace ffp;

namespace {

const AxiomReport& find_report(const std::vector<AxiomReport>& reports, const std::string& name) {
    for (const auto& r : reports)
        if (r.axiom == name) return r;
    throw std::logic_error("no report named " + name);
}

}  // namespace

TEST_CASE("shipped t-norm values") {
    const TNorm tmin(TNormKind::StandardIntersection);
    const TNorm tprod(TNormKind::AlgebraicProduct);
    const TNorm tluk(TNormKind::BoundedDifference);

    CHECK(tmin(0.3, 0.7) == 0.3);
    CHECK(tprod(0.5, 0.4) == 0.2);
    CHECK(tluk(0.8, 0.7) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tluk(0.2, 0.3) == 0.0);
}

TEST_CASE("identity and annihilator are exact for every kind") {
    for (TNormKind kind : {TNormKind::StandardIntersection, TNormKind::AlgebraicProduct,
                           TNormKind::BoundedDifference}) {
        const TNorm tn(kind);
        for (double u : {0.0, 0.1, 0.25, 0.5, 0.77, 1.0}) {
            CHECK(tn(u, 1.0) == u);
            CHECK(tn(1.0, u) == u);
            CHECK(tn(u, 0.0) == 0.0);
            CHECK(tn(0.0, u) == 0.0);
        }
    }
}

TEST_CASE("arguments outside the unit interval are rejected") {
    const TNorm tn = default_tnorm();
    CHECK_THROWS_AS(tn(1.2, 0.5), std::domain_error);
    CHECK_THROWS_AS(tn(0.5, -0.1), std::domain_error);
    CHECK_THROWS_AS(tn(std::nan(""), 0.5), std::domain_error);
}

TEST_CASE("name round trip and unknown names") {
    CHECK(TNorm::from_name("min").kind() == TNormKind::StandardIntersection);
    CHECK(TNorm::from_name("product").kind() == TNormKind::AlgebraicProduct);
    CHECK(TNorm::from_name("lukasiewicz").kind() == TNormKind::BoundedDifference);
    for (TNormKind kind : {TNormKind::StandardIntersection, TNormKind::AlgebraicProduct,
                           TNormKind::BoundedDifference}) {
        const TNorm tn(kind);
        CHECK(TNorm::from_name(tn.name()).kind() == kind);
    }
    CHECK_THROWS_AS(TNorm::from_name("zadeh"), ConfigError);
}

TEST_CASE("axiom checker passes all shipped t-norms") {
    for (TNormKind kind : {TNormKind::StandardIntersection, TNormKind::AlgebraicProduct,
                           TNormKind::BoundedDifference}) {
        const auto reports = check_tnorm_axioms(TNorm(kind), 2000, 42);
        REQUIRE(reports.size() == 4);
        for (const auto& r : reports) {
            INFO(r.axiom, " for kind ", static_cast<int>(kind));
            CHECK(r.passed);
            CHECK(r.witness.empty());
        }
        CHECK(find_report(reports, "associativity").max_violation <= 1e-12);
        CHECK(find_report(reports, "boundary").max_violation == 0.0);
        CHECK(find_report(reports, "commutativity").max_violation == 0.0);
    }
}

TEST_CASE("broken mean operation fails associativity with a reproducible witness") {
    const BinaryOp mean = [](double u, double v) { return (u + v) / 2.0; };
    const auto reports = check_tnorm_axioms(mean, 2000, 42);
    const AxiomReport& assoc = find_report(reports, "associativity");
    CHECK_FALSE(assoc.passed);
    REQUIRE(assoc.witness.size() == 3);

    // Recompute the violation at the reported witness by hand.
    const double u = assoc.witness[0];
    const double v = assoc.witness[1];
    const double w = assoc.witness[2];
    const double gap = std::abs(mean(mean(u, v), w) - mean(u, mean(v, w)));
    CHECK(gap == doctest::Approx(assoc.max_violation).epsilon(1e-15));
    CHECK(gap > 1e-12);

    // Same seed, same witness: the counterexample is reproducible.
    const auto again = check_tnorm_axioms(mean, 2000, 42);
    CHECK(find_report(again, "associativity").witness == assoc.witness);
    CHECK(find_report(again, "associativity").max_violation == assoc.max_violation);

    // The mean also breaks the boundary law (identity 1 fails).
    CHECK_FALSE(find_report(reports, "boundary").passed);
}

TEST_CASE("first-argument projection fails commutativity") {
    const BinaryOp proj = [](double u, double) { return u; };
    const auto reports = check_tnorm_axioms(proj, 500, 7);
    CHECK_FALSE(find_report(reports, "commutativity").passed);
}
