#include <catch2/catch_amalgamated.hpp>

#include "gonodyn/fixed_points.hpp"

using gonodyn::FixedPointFamily;
using gonodyn::GonosomalParams;
using gonodyn::Rational;
using gonodyn::SimplexPoint;

TEST_CASE("segment points are exactly fixed in rational arithmetic", "[fixed-points]") {
    const auto p = GonosomalParams<Rational>::from_a_sigma(Rational(1, 3), Rational(2, 3));
    SECTION("female-dominant segment") {
        for (int i = 0; i <= 8; ++i) {
            const Rational u = Rational(p.b * gonodyn::scalar_traits<Rational>::from_ratio(i, 8));
            const auto s = gonodyn::f11_point(p, u);
            REQUIRE(s.x() == Rational(0));
            REQUIRE(s.y() == p.a);
            REQUIRE(gonodyn::fixed_point_residual(p, s) == Rational(0));
        }
    }
    SECTION("male-dominant segment") {
        for (int i = 0; i <= 8; ++i) {
            const Rational x = Rational(p.a * gonodyn::scalar_traits<Rational>::from_ratio(i, 8));
            const auto s = gonodyn::f12_point(p, x);
            REQUIRE(s.v() == Rational(0));
            REQUIRE(s.u() == p.b);
            REQUIRE(gonodyn::fixed_point_residual(p, s) == Rational(0));
        }
    }
    SECTION("parameters outside the segments are rejected") {
        CHECK_THROWS_AS(gonodyn::f11_point(p, Rational(Rational(1) + p.b)), gonodyn::DomainError);
        CHECK_THROWS_AS(gonodyn::f12_point(p, Rational(-1, 10)), gonodyn::DomainError);
    }
}

TEST_CASE("points off both segments are not fixed", "[fixed-points]") {
    const auto p = GonosomalParams<double>::from_a_sigma(0.5, 0.5);
    const auto s = SimplexPoint<double>::from_xyuv(0.3, 0.2, 0.25, 0.25);
    CHECK(gonodyn::fixed_point_residual(p, s) > 1e-3);
    CHECK_THROWS_AS(gonodyn::analytic_eigenvalues(p, s), gonodyn::PreconditionError);
    CHECK_THROWS_AS(gonodyn::eigenvalues_at(p, s), gonodyn::PreconditionError);
}

TEST_CASE("closed-form spectra at chosen fixed points", "[fixed-points]") {
    const auto p = GonosomalParams<double>::from_a_sigma(0.5, 0.5);
    SECTION("interior of the female-dominant segment") {
        const auto s = SimplexPoint<double>::from_xyuv(0.0, 0.5, 0.3, 0.2);
        const auto ev = gonodyn::analytic_eigenvalues(p, s);
        CHECK(ev[0] == 0.0);
        CHECK(ev[1] == Catch::Approx(0.6));  // 1 - v/b = 1 - 0.2/0.5
        CHECK(ev[2] == 1.0);
    }
    SECTION("far endpoint carries a vanishing middle eigenvalue") {
        const auto s = SimplexPoint<double>::from_xyuv(0.0, 0.5, 0.0, 0.5);
        const auto ev = gonodyn::analytic_eigenvalues(p, s);
        CHECK(ev[0] == 0.0);
        CHECK(ev[1] == Catch::Approx(0.0).margin(1e-15));
        CHECK(ev[2] == 1.0);
    }
    SECTION("the shared corner has a double unit eigenvalue") {
        const auto s = SimplexPoint<double>::from_xyuv(0.0, 0.5, 0.5, 0.0);
        const auto ev = gonodyn::analytic_eigenvalues(p, s);
        CHECK(ev[0] == 0.0);
        CHECK(ev[1] == Catch::Approx(1.0));
        CHECK(ev[2] == 1.0);
    }
    SECTION("male-dominant segment mirrors the formula in x/a") {
        const auto s = SimplexPoint<double>::from_xyuv(0.2, 0.3, 0.5, 0.0);
        const auto ev = gonodyn::analytic_eigenvalues(p, s);
        CHECK(ev[1] == Catch::Approx(0.6));  // 1 - x/a = 1 - 0.2/0.5
    }
    SECTION("no fixed point is hyperbolic: the unit eigenvalue is always present") {
        for (int i = 0; i <= 6; ++i) {
            const auto s = gonodyn::f11_point(p, p.b * i / 6.0);
            const auto ev = gonodyn::analytic_eigenvalues(p, s);
            CHECK(ev[2] == 1.0);
        }
    }
}

TEST_CASE("enumeration samples both segments uniformly", "[fixed-points]") {
    const auto p = GonosomalParams<Rational>::from_a_sigma(Rational(1, 2), Rational(1, 2));
    const auto list = gonodyn::enumerate_fixed_points(p, 3);
    REQUIRE(list.size() == 6);

    // Female-dominant triple: (0, 1/2, 0, 1/2), (0, 1/2, 1/4, 1/4), (0, 1/2, 1/2, 0).
    CHECK(list[0].family == FixedPointFamily::F11);
    CHECK(list[0].point.u() == Rational(0));
    CHECK(list[0].point.v() == Rational(1, 2));
    CHECK(list[1].point.u() == Rational(1, 4));
    CHECK(list[1].point.v() == Rational(1, 4));
    CHECK(list[2].point.u() == Rational(1, 2));
    CHECK(list[2].point.v() == Rational(0));

    // Male-dominant triple: (0, 1/2, 1/2, 0), (1/4, 1/4, 1/2, 0), (1/2, 0, 1/2, 0).
    CHECK(list[3].family == FixedPointFamily::F12);
    CHECK(list[3].point.x() == Rational(0));
    CHECK(list[4].point.x() == Rational(1, 4));
    CHECK(list[4].point.y() == Rational(1, 4));
    CHECK(list[5].point.x() == Rational(1, 2));
    CHECK(list[5].point.y() == Rational(0));

    // The shared corner appears once per family.
    CHECK(list[2].point.max_norm_distance(list[3].point) == Rational(0));

    SECTION("fewer than two samples violate the precondition") {
        CHECK_THROWS_AS(gonodyn::enumerate_fixed_points(p, 1), gonodyn::ConfigError);
        CHECK_THROWS_AS(gonodyn::enumerate_fixed_points(p, 0), gonodyn::ConfigError);
    }
    SECTION("two samples give the segment endpoints") {
        const auto ends = gonodyn::enumerate_fixed_points(p, 2);
        REQUIRE(ends.size() == 4);
        CHECK(ends[0].free_parameter == Rational(0));
        CHECK(ends[1].free_parameter == p.b);
        CHECK(ends[2].free_parameter == Rational(0));
        CHECK(ends[3].free_parameter == p.a);
    }
}

TEST_CASE("finite-difference spectra reproduce the closed formulas", "[fixed-points]") {
    // Interior segment points keep the three eigenvalues distinct, where the
    // finite-difference + eigensolve pipeline is well conditioned.
    for (const double a : {0.3, 0.5, 0.7}) {
        const auto p = GonosomalParams<double>::from_a_sigma(a, a);
        for (int j = 1; j <= 5; ++j) {
            const double t = static_cast<double>(j) / 6.0;
            for (const bool female : {true, false}) {
                const auto s = female ? gonodyn::f11_point(p, p.b * t) : gonodyn::f12_point(p, p.a * t);
                const auto analytic = gonodyn::analytic_eigenvalues(p, s);
                const auto fd = gonodyn::eigenvalues_at(p, s);
                for (int i = 0; i < 3; ++i)
                    REQUIRE(std::fabs(fd[i] - analytic[i]) <= 1e-8);
            }
        }
    }
}

TEST_CASE("the unrestricted Jacobian adds one structural zero", "[fixed-points]") {
    // The map preserves the coordinate-sum hyperplane, so the full 4x4
    // differential has column sums zero: its spectrum is the tangent-space
    // spectrum plus one extra zero from the quotient direction.
    const auto p = GonosomalParams<double>::from_a_sigma(0.4, 0.4);
    const auto s = gonodyn::f11_point(p, 0.25 * p.b);
    const auto full = gonodyn::eigenvalues_full(p, s);
    const auto chart = gonodyn::analytic_eigenvalues(p, s);
    const std::array<double, 4> expected{0.0, chart[0], chart[1], chart[2]};
    // The doubled zero can sit in a defective block, where finite-difference
    // noise of ~1e-10 splits eigenvalues by its square root; hence the loose
    // tolerance on this reported-only spectrum.
    for (int i = 0; i < 4; ++i) REQUIRE(std::fabs(full[i] - expected[i]) <= 1e-4);
}
