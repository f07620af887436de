#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ffp/errors.hpp"
#include "ffp/rng.hpp"
#include "ffp/seminorm.hpp"

using namespace ffp;

TEST_CASE("closed-form gauge values") {
    const Seminorm sup = Seminorm::weighted_sup({1.0, 1.0});
    CHECK(sup({2.0, 1.0}) == 2.0);
    CHECK(sup({0.0, 0.0}) == 0.0);

    const Seminorm ell = Seminorm::ellipsoid_gauge({2.0, 1.0});
    CHECK(ell({2.0, 2.0}) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(ell({0.0, 0.0}) == 0.0);

    const Seminorm abs0 = Seminorm::weighted_abs(2, 0, 3.0);
    CHECK(abs0({-2.0, 100.0}) == 6.0);
    CHECK(abs0({0.0, 5.0}) == 0.0);
}

TEST_CASE("norm and axis visibility classification") {
    CHECK(Seminorm::weighted_abs(1, 0, 1.0).is_norm());
    CHECK_FALSE(Seminorm::weighted_abs(2, 0, 1.0).is_norm());
    CHECK(Seminorm::weighted_sup({1.0, 2.0}).is_norm());
    CHECK_FALSE(Seminorm::weighted_sup({1.0, 0.0}).is_norm());
    CHECK(Seminorm::ellipsoid_gauge({1.0, 1.0}).is_norm());

    const Seminorm q = Seminorm::weighted_sup({1.0, 0.0});
    CHECK(q.sees_axis(0));
    CHECK_FALSE(q.sees_axis(1));
}

TEST_CASE("factory validation") {
    CHECK_THROWS_AS(Seminorm::weighted_abs(2, 2, 1.0), ConfigError);   // axis out of range
    CHECK_THROWS_AS(Seminorm::weighted_abs(2, 0, 0.0), ConfigError);   // weight not positive
    CHECK_THROWS_AS(Seminorm::weighted_abs(0, 0, 1.0), ConfigError);   // empty space
    CHECK_THROWS_AS(Seminorm::weighted_sup({}), ConfigError);          // no axes
    CHECK_THROWS_AS(Seminorm::weighted_sup({-1.0, 1.0}), ConfigError); // negative weight
    CHECK_THROWS_AS(Seminorm::weighted_sup({0.0, 0.0}), ConfigError);  // identically zero
    CHECK_THROWS_AS(Seminorm::ellipsoid_gauge({1.0, 0.0}), ConfigError);
    const Seminorm q = Seminorm::weighted_sup({1.0, 1.0});
    CHECK_THROWS_AS(q({1.0}), std::domain_error);
    CHECK_THROWS_AS(q.axis(), std::logic_error);  // accessor for a different kind
}

TEST_CASE("seminorm algebra on sampled points") {
    const std::vector<Seminorm> kinds = {
        Seminorm::weighted_abs(3, 1, 2.5),
        Seminorm::weighted_sup({1.0, 0.5, 2.0}),
        Seminorm::ellipsoid_gauge({2.0, 1.0, 0.5}),
    };
    Rng rng(9001);
    for (const Seminorm& q : kinds) {
        for (int s = 0; s < 200; ++s) {
            Point y(3), z(3);
            for (auto& c : y) c = rng.symmetric(5.0);
            for (auto& c : z) c = rng.symmetric(5.0);
            const double c = rng.symmetric(3.0);
            CHECK(q(scaled(c, y)) == doctest::Approx(std::abs(c) * q(y)).epsilon(1e-12));
            CHECK(q(add(y, z)) <= q(y) + q(z) + 1e-12);
            CHECK(q(y) >= 0.0);
        }
    }
}

TEST_CASE("minkowski functional matches the closed form") {
    const Seminorm sup = Seminorm::weighted_sup({1.0, 1.0});
    CHECK(std::abs(minkowski_functional(sup, {2.0, 1.0}, 1e-10) - 2.0) <= 1e-10);
    CHECK(std::abs(minkowski_functional(sup, {0.0, 0.0}, 1e-10)) <= 1e-10);

    const Seminorm ell = Seminorm::ellipsoid_gauge({2.0, 1.0});
    CHECK(std::abs(minkowski_functional(ell, {2.0, 2.0}, 1e-10) - std::sqrt(5.0)) <= 1e-10);
}

TEST_CASE("minkowski functional cross-checks every kind on random points") {
    const std::vector<Seminorm> kinds = {
        Seminorm::weighted_abs(2, 0, 1.5),
        Seminorm::weighted_sup({2.0, 1.0}),
        Seminorm::ellipsoid_gauge({0.5, 3.0}),
    };
    Rng rng(77);
    for (const Seminorm& q : kinds) {
        for (int s = 0; s < 50; ++s) {
            Point y(2);
            for (auto& c : y) c = rng.symmetric(10.0);
            const double gauge = q(y);
            const double bisected = minkowski_functional(q, y, 1e-10);
            CHECK(std::abs(bisected - gauge) <= 2e-10);
        }
    }
}

TEST_CASE("family construction validates members") {
    CHECK_THROWS_AS(SeminormFamily({}), ConfigError);
    CHECK_THROWS_AS(SeminormFamily({Seminorm::weighted_abs(1, 0, 1.0),
                                    Seminorm::weighted_sup({1.0, 1.0})}),
                    ConfigError);
    const SeminormFamily fam({Seminorm::weighted_abs(2, 0, 1.0),
                              Seminorm::weighted_abs(2, 1, 1.0)});
    CHECK(fam.size() == 2);
    CHECK(fam.dim() == 2);
}

TEST_CASE("separation verdicts") {
    const SeminormFamily covered({Seminorm::weighted_abs(2, 0, 1.0),
                                  Seminorm::weighted_abs(2, 1, 1.0)});
    const SeparationCheck both = is_separating(covered, 123);
    CHECK(both.separating);
    CHECK(both.exact);
    CHECK_FALSE(both.witness.has_value());

    const SeminormFamily gap({Seminorm::weighted_abs(2, 0, 1.0)});
    const SeparationCheck missing = is_separating(gap, 123);
    CHECK_FALSE(missing.separating);
    CHECK(missing.exact);
    REQUIRE(missing.witness.has_value());
    const Point& w = *missing.witness;
    CHECK(sup_norm(w) > 0.0);
    CHECK(gap[0](w) == 0.0);  // the witness is invisible to every member

    const SeminormFamily norm({Seminorm::ellipsoid_gauge({1.0, 1.0})});
    const SeparationCheck alone = is_separating(norm, 123);
    CHECK(alone.separating);
    CHECK(alone.exact);
}

TEST_CASE("describe says what the gauge is") {
    CHECK(Seminorm::weighted_abs(2, 1, 0.5).describe().find("abs") != std::string::npos);
    CHECK(Seminorm::weighted_sup({1.0}).describe().find("sup") != std::string::npos);
    CHECK(Seminorm::ellipsoid_gauge({1.0}).describe().find("ellipsoid") != std::string::npos);
}
