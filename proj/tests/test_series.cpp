#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gonodyn/invariant_curves.hpp"

using gonodyn::Case1Branch;
using gonodyn::GonosomalParams;
using gonodyn::Rational;
using gonodyn::TruncatedSeries;

namespace {

TruncatedSeries<Rational> quadratic(const Rational& c1, const Rational& c2, int order) {
    TruncatedSeries<Rational> f(order);
    f[1] = c1;
    f[2] = c2;
    return f;
}

bool all_zero(const TruncatedSeries<Rational>& s) {
    for (int k = 0; k <= s.order(); ++k)
        if (!(s[k] == Rational(0))) return false;
    return true;
}

}  // namespace

TEST_CASE("series arithmetic matches hand expansions", "[series]") {
    SECTION("(1 + x)^2 = 1 + 2x + x^2") {
        auto one_plus = TruncatedSeries<Rational>::constant(4, Rational(1));
        one_plus[1] = Rational(1);
        const auto sq = one_plus * one_plus;
        CHECK(sq[0] == Rational(1));
        CHECK(sq[1] == Rational(2));
        CHECK(sq[2] == Rational(1));
        CHECK(sq[3] == Rational(0));
    }
    SECTION("(x + x^2) composed with itself") {
        // g(g(x)) with g = x + x^2: substitute and expand by hand:
        // (x + x^2) + (x + x^2)^2 = x + 2x^2 + 2x^3 + x^4.
        TruncatedSeries<Rational> g(4);
        g[1] = Rational(1);
        g[2] = Rational(1);
        const auto gg = g.compose(g);
        CHECK(gg[0] == Rational(0));
        CHECK(gg[1] == Rational(1));
        CHECK(gg[2] == Rational(2));
        CHECK(gg[3] == Rational(2));
        CHECK(gg[4] == Rational(1));
    }
    SECTION("Horner evaluation is exact") {
        TruncatedSeries<Rational> g(3);
        g[1] = Rational(1);
        g[2] = Rational(1);
        CHECK(g.eval(Rational(1, 2)) == Rational(3, 4));
    }
    SECTION("composition demands a vanishing inner constant") {
        const auto c = TruncatedSeries<Rational>::constant(3, Rational(1));
        const auto v = TruncatedSeries<Rational>::variable(3);
        CHECK_THROWS_AS(v.compose(c), gonodyn::PreconditionError);
    }
    SECTION("mixed orders are rejected") {
        TruncatedSeries<Rational> a(3), b(4);
        CHECK_THROWS_AS(a + b, gonodyn::PreconditionError);
    }
    SECTION("consecutive powers") {
        const auto v = TruncatedSeries<Rational>::variable(4);
        const auto pw = gonodyn::series_powers(v, 3);
        REQUIRE(pw.size() == 3);
        CHECK(pw[0][1] == Rational(1));
        CHECK(pw[1][2] == Rational(1));
        CHECK(pw[2][3] == Rational(1));
        CHECK(pw[2][1] == Rational(0));
    }
}

TEST_CASE("the identity curve solves the balanced functional equation", "[series]") {
    const auto res = gonodyn::detail::curve_residual_series(
        quadratic(Rational(1), Rational(0), 30), Rational(1), Rational(1));
    CHECK(all_zero(res));
}

TEST_CASE("the quadratic family solves the balanced equation identically", "[series]") {
    // f = theta*alpha - alpha^2 for theta in {0, 1/2, 1, 3/2, 2}. The residual
    // is a polynomial of degree <= 9, so a truncation order of 40 captures it
    // entirely: all-zero means the identity holds exactly, not just formally.
    for (const auto& theta :
         {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
        const auto res = gonodyn::detail::curve_residual_series(
            quadratic(theta, Rational(-1), 40), Rational(1), Rational(1));
        INFO("theta = " << theta);
        CHECK(all_zero(res));
    }
}

TEST_CASE("the quadratic family fails off the balanced case", "[series]") {
    const auto res = gonodyn::detail::curve_residual_series(
        quadratic(Rational(3, 2), Rational(-1), 12), Rational(2), Rational(1, 2));
    CHECK_FALSE(all_zero(res));
}

TEST_CASE("balanced branch solutions terminate after the quadratic term", "[series]") {
    SECTION("branch A is the diagonal advance map") {
        const auto sol = gonodyn::solve_case1<Rational>(Case1Branch::A, Rational(1), 50);
        CHECK(sol.c[0] == Rational(1));
        CHECK(sol.c[1] == Rational(0));
        for (int k = 3; k <= 50; ++k) {
            INFO("k = " << k);
            REQUIRE(sol.c[static_cast<std::size_t>(k - 1)] == Rational(0));
        }
        CHECK(sol.consistency_events.empty());
        CHECK(sol.validity_radius == 1.0);
        CHECK_FALSE(sol.divergence_warning);
    }
    SECTION("branch B for several intercepts, including the resonant theta = 1") {
        for (const auto& theta :
             {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
            const auto sol = gonodyn::solve_case1<Rational>(Case1Branch::B, theta, 50);
            INFO("theta = " << theta);
            CHECK(sol.c[0] == theta);
            CHECK(sol.c[1] == Rational(-1));
            for (int k = 3; k <= 50; ++k)
                REQUIRE(sol.c[static_cast<std::size_t>(k - 1)] == Rational(0));
            CHECK(sol.consistency_events.empty());
        }
    }
    SECTION("order bounds and the quadratic-resonance guard") {
        CHECK_THROWS_AS(gonodyn::solve_case1<Rational>(Case1Branch::B, Rational(1), 1),
                        gonodyn::ConfigError);
        try {
            gonodyn::solve_case1<Rational>(Case1Branch::B, Rational(-1), 10);
            FAIL("theta = -1 must be rejected as resonant");
        } catch (const gonodyn::ResonanceError& e) {
            CHECK(e.order == 4);
        }
    }
}

TEST_CASE("the unbalanced order-3 equation pins the second coefficient", "[series]") {
    const auto p = GonosomalParams<Rational>::from_rates(Rational(2), Rational(1, 2));
    // -p2 - (p1-p2) c1 + (p1-1) c1^2 by hand:
    //   c1 = 1/2: -1/2 - 3/4 + 1/4 = -1
    //   c1 = 1/4: -1/2 - 3/8 + 1/16 = -13/16
    CHECK(gonodyn::case2_seed_c2(p, Rational(1, 2)) == Rational(-1));
    CHECK(gonodyn::case2_seed_c2(p, Rational(1, 4)) == Rational(-13, 16));
}

TEST_CASE("consistent unbalanced seeds build a verified curve", "[series]") {
    const auto p = GonosomalParams<Rational>::from_rates(Rational(2), Rational(1, 2));
    const Rational c1(1, 2);
    const auto sol = gonodyn::solve_case2(p, c1, gonodyn::case2_seed_c2(p, c1), 20);
    CHECK(sol.consistency_events.empty());
    CHECK(sol.order == 20);
    CHECK(sol.validity_radius > 0.0);

    SECTION("the full residual series vanishes through the matching window") {
        // Independent of the matcher's incremental probes: build the solution
        // series with a zero tail and expand the functional equation directly.
        TruncatedSeries<Rational> f(23);
        for (int k = 1; k <= 20; ++k) f[k] = sol.c[static_cast<std::size_t>(k - 1)];
        const auto res = gonodyn::detail::curve_residual_series(f, p.p1, p.p2);
        for (int m = 0; m <= 21; ++m) {
            INFO("order " << m);
            REQUIRE(res[m] == Rational(0));
        }
    }
    SECTION("pointwise invariance holds inside the validity radius") {
        const auto v = gonodyn::verify_series_curve(sol, 100, 1e-8);
        CHECK(v.points_checked > 0);
        CHECK(v.ok);
    }
    SECTION("the companion recurrence transcription is reported, never enforced") {
        CHECK(sol.recurrence_residuals.size() == 19);
        for (const double r : sol.recurrence_residuals) CHECK(std::isfinite(r));
    }
}

TEST_CASE("an off-family second coefficient is flagged, not fatal", "[series]") {
    const auto p = GonosomalParams<double>::from_rates(2.0, 0.5);
    const auto sol = gonodyn::solve_case2(p, 0.5, -0.1, 20);
    REQUIRE_FALSE(sol.consistency_events.empty());
    CHECK(sol.consistency_events.front().first == 3);
    CHECK(sol.consistency_events.front().second > 0.01);
    // The coefficients of this wrong curve stay bounded (it is inconsistent,
    // not divergent), so no divergence warning fires -- and the pointwise
    // verifier must reject it rather than bless a non-invariant curve.
    CHECK_FALSE(sol.divergence_warning);
    const auto v = gonodyn::verify_series_curve(sol, 100, 1e-8);
    CHECK(v.points_checked > 0);
    CHECK_FALSE(v.ok);
    CHECK(v.max_residual > 1e-2);
}

TEST_CASE("resonant intercept coefficients are rejected in the unbalanced case", "[series]") {
    const auto p = GonosomalParams<Rational>::from_rates(Rational(2), Rational(1, 2));
    try {
        gonodyn::solve_case2(p, Rational(1), Rational(-1), 10);
        FAIL("c1 = 1 must be rejected");
    } catch (const gonodyn::ResonanceError& e) {
        CHECK(e.order == 3);
    }
    CHECK_THROWS_AS(gonodyn::solve_case2(p, Rational(-1), Rational(-1), 10),
                    gonodyn::ResonanceError);
}

TEST_CASE("the conserved-line defect is identically zero", "[series]") {
    for (const auto& theta :
         {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
        for (int j = 1; j <= 100; ++j) {
            const Rational alpha(j, 101);
            REQUIRE(gonodyn::line_invariance_residual(theta, alpha) == Rational(0));
        }
    }
}

TEST_CASE("curve evaluation agrees with its defining relation", "[series]") {
    const auto p = GonosomalParams<double>::from_rates(2.0, 0.5);
    const auto sol = gonodyn::solve_case2(p, 0.5, gonodyn::case2_seed_c2(p, 0.5), 16);
    for (double alpha = 0.01; alpha < 0.2; alpha += 0.02) {
        const double f = sol.f_at(alpha);
        const double g = sol.g_at(alpha);
        // g = (alpha - f) / (alpha (1 + (p1-1) f))
        CHECK(g * alpha * (1.0 + (2.0 - 1.0) * f) == Catch::Approx(alpha - f).margin(1e-14));
    }
    // The beta-axis intercept of the curve is 1 - c_1.
    CHECK(sol.g_at(0.0) == Catch::Approx(0.5));
}

TEST_CASE("balanced line curves verify pointwise", "[series]") {
    const auto sol = gonodyn::solve_case1<double>(Case1Branch::B, 0.5, 12);
    const auto v = gonodyn::verify_series_curve(sol, 100, 1e-8);
    CHECK(v.ok);
}
