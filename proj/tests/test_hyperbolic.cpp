#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "confsurf/hyperbolic.hpp"

using namespace confsurf;

TEST_CASE("heights and end types") {
    DecoratedMetric m;
    m.radius = {1.0, std::exp(-1.0), 0.0, 2.0};
    m.length = {};
    SUBCASE("at zero factors") {
        auto hv = heights(m, {0.0, 0.0, 0.0, 0.0});
        CHECK(hv.eps == std::vector<int>{1, 1, 0, 1});
        CHECK(hv.h[0] == doctest::Approx(0.0));
        CHECK(hv.h[1] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(hv.h[2] == doctest::Approx(0.0));
        CHECK(hv.h[3] == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
    }
    SUBCASE("scale factors enter as height drops for every end type") {
        std::vector<double> u = {0.3, -0.2, 0.7, 1.1};
        auto h0 = heights(m, {0.0, 0.0, 0.0, 0.0});
        auto hu = heights(m, u);
        for (int v = 0; v < 4; ++v)
            CHECK(h0.h[v] - hu.h[v] == doctest::Approx(u[v]).epsilon(1e-13));
    }
}

TEST_CASE("truncated edge lengths") {
    SUBCASE("two hyperideal ends: arcosh of the inversive distance") {
        double l = std::sqrt(6.0);
        CHECK(lambda_length(l, 0.0, 0.0, 1, 1) == doctest::Approx(std::acosh(2.0)).epsilon(1e-14));
        helpers::Rng rng(83);
        for (int t = 0; t < 50; ++t) {
            double ri = helpers::uniform(rng, 0.1, 1.0);
            double rj = helpers::uniform(rng, 0.1, 1.0);
            double ll = (ri + rj) * helpers::uniform(rng, 1.05, 3.0);
            double lam = lambda_length(ll, -std::log(ri), -std::log(rj), 1, 1);
            CHECK(std::cosh(lam) ==
                  doctest::Approx(inversive_distance(ll, ri, rj)).epsilon(1e-12));
        }
    }
    SUBCASE("two ideal ends: twice the log length") {
        CHECK(lambda_length(3.0, 0.0, 0.0, 0, 0) ==
              doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-14));
        CHECK(lambda_length(1.0, 0.0, 0.0, 0, 0) == doctest::Approx(0.0));
    }
    SUBCASE("mixed ends") {
        CHECK(lambda_length(2.0, 0.0, 0.0, 1, 0) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    }
    SUBCASE("non-disjoint circles are rejected") {
        CHECK_THROWS_AS(lambda_length(std::sqrt(2.0), 0.0, 0.0, 1, 1), GeometryError);
        CHECK_THROWS_AS(lambda_length(2.0, 0.0, 0.0, 1, 1), GeometryError);  // tangent
        CHECK_THROWS_AS(lambda_length(0.5, 0.0, 0.0, 1, 0), GeometryError);
    }
    SUBCASE("invariant under the conformal change of a decorated edge") {
        // Scaling both ends changes lengths and heights but not lambda.
        helpers::Rng rng(89);
        for (int t = 0; t < 50; ++t) {
            double ri = helpers::uniform(rng, 0.1, 0.8);
            double rj = helpers::uniform(rng, 0.1, 0.8);
            double l = (ri + rj) * helpers::uniform(rng, 1.1, 2.5);
            double ui = helpers::uniform(rng, -0.8, 0.8);
            double uj = helpers::uniform(rng, -0.8, 0.8);
            double lt = scaled_edge_length(l, ri, rj, ui, uj, false);
            double base = lambda_length(l, -std::log(ri), -std::log(rj), 1, 1);
            double moved = lambda_length(lt, -std::log(ri) - ui, -std::log(rj) - uj, 1, 1);
            CHECK(moved == doctest::Approx(base).epsilon(1e-11));
        }
    }
}

TEST_CASE("hyper- and horosphere radii from heights") {
    CHECK(hyperbolic_radius(0.0, 1) == doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-14));
    CHECK(hyperbolic_radius(0.0, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    helpers::Rng rng(97);
    for (int t = 0; t < 50; ++t) {
        double h = helpers::uniform(rng, -2.0, 2.0);
        for (int eps : {0, 1}) {
            double rho = hyperbolic_radius(h, eps);
            CHECK((std::exp(rho) - eps * std::exp(-rho)) / 2.0 ==
                  doctest::Approx(std::exp(h)).epsilon(1e-13));
        }
    }
}

TEST_CASE("Lobachevsky function: structure") {
    CHECK(lobachevsky(0.0) == 0.0);
    CHECK(lobachevsky(M_PI) == 0.0);
    CHECK(std::abs(lobachevsky(M_PI_2)) < 1e-14);
    CHECK(lobachevsky(M_PI / 6) == doctest::Approx(0.50747080320482681251).epsilon(1e-15));
    CHECK(lobachevsky(M_PI / 3) == doctest::Approx(0.33831386880321787501).epsilon(1e-15));
    // Odd, pi-periodic, maximal at pi/6.
    helpers::Rng rng(101);
    for (int t = 0; t < 100; ++t) {
        double x = helpers::uniform(rng, -8.0, 8.0);
        CHECK(lobachevsky(-x) == -lobachevsky(x));
        CHECK(lobachevsky(x + M_PI) == doctest::Approx(lobachevsky(x)).epsilon(1e-13));
    }
    CHECK(lobachevsky(M_PI / 6) > lobachevsky(M_PI / 6 + 0.01));
    CHECK(lobachevsky(M_PI / 6) > lobachevsky(M_PI / 6 - 0.01));
    // The doubling identity pins the relative normalization.
    CHECK(lobachevsky(M_PI / 6) == doctest::Approx(1.5 * lobachevsky(M_PI / 3)).epsilon(1e-14));
}

TEST_CASE("Lobachevsky function: derivative and quadrature oracle") {
    helpers::Rng rng(103);
    for (int t = 0; t < 40; ++t) {
        double x = helpers::uniform(rng, 0.05, M_PI - 0.05);
        double fd = helpers::central_difference(
            [&](double d) { return lobachevsky(x + d); }, 1e-6);
        CHECK(fd == doctest::Approx(-std::log(std::abs(2.0 * std::sin(x)))).epsilon(1e-6).scale(1.0));
    }
    for (int t = 0; t < 60; ++t) {
        double x = helpers::uniform(rng, -7.0, 7.0);
        CHECK(lobachevsky(x) == doctest::Approx(helpers::lobachevsky_quadrature(x))
                                    .epsilon(1e-13)
                                    .scale(1.0));
    }
}

TEST_CASE("prism volume over a decorated triangle") {
    SUBCASE("ideal equilateral prism") {
        std::array<double, 3> third = {M_PI / 3, M_PI / 3, M_PI / 3};
        CHECK(horoprism_volume(third, third) ==
              doctest::Approx(3.0 * lobachevsky(M_PI / 3)).epsilon(1e-14));
    }
    SUBCASE("relabeling invariance") {
        helpers::Rng rng(107);
        for (int t = 0; t < 60; ++t) {
            // Angles from a genuine decorated triangle.
            std::array<double, 3> l, r;
            while (true) {
                l = {helpers::uniform(rng, 0.5, 2.0), helpers::uniform(rng, 0.5, 2.0), 0.0};
                l[2] = helpers::uniform(rng, std::abs(l[0] - l[1]) + 0.05, l[0] + l[1] - 0.05);
                if (l[2] > std::abs(l[0] - l[1]) + 0.01 && l[2] < l[0] + l[1] - 0.01) break;
            }
            for (int c = 0; c < 3; ++c)
                r[c] = helpers::uniform(rng, 0.02, 0.4) * std::min(l[(c + 1) % 3], l[(c + 2) % 3]);
            auto theta = corner_angles(l);
            auto pd = triangle_power(l, r);
            double base = horoprism_volume(theta, pd.alpha);
            CHECK(std::isfinite(base));
            std::array<double, 3> theta_rot = {theta[1], theta[2], theta[0]};
            std::array<double, 3> alpha_rot = {pd.alpha[1], pd.alpha[2], pd.alpha[0]};
            CHECK(horoprism_volume(theta_rot, alpha_rot) == doctest::Approx(base).epsilon(1e-12));
            std::array<double, 3> theta_ref = {theta[0], theta[2], theta[1]};
            std::array<double, 3> alpha_ref = {pd.alpha[0], pd.alpha[2], pd.alpha[1]};
            CHECK(horoprism_volume(theta_ref, alpha_ref) == doctest::Approx(base).epsilon(1e-12));
        }
    }
    SUBCASE("angle sum is checked") {
        std::array<double, 3> bad = {1.0, 1.0, 1.0};
        std::array<double, 3> alpha = {M_PI / 3, M_PI / 3, M_PI / 3};
        CHECK_THROWS_AS(horoprism_volume(bad, alpha), GeometryError);
    }
}
