#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "grid.hpp"
#include "model.hpp"

using namespace lel;

namespace {

LevyModel stable(int d, double alpha) {
    return make_model({"isotropic-stable", d, {{"alpha", alpha}}});
}

}  // namespace

TEST_CASE("catalogue closed forms") {
    auto bm = make_model({"brownian", 1, {{"sigma", 1.0}}});
    CHECK(bm.psi(2.0) == doctest::Approx(4.0));
    CHECK(bm.nu().zero_measure());

    auto cauchy = stable(1, 1.0);
    CHECK(cauchy.psi(2.0) == doctest::Approx(2.0));

    auto rel = make_model({"relativistic-stable", 3, {{"alpha", 1.0}, {"m", 1.0}}});
    CHECK(rel.psi(1.0) == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("maximal exponent") {
    auto bm = make_model({"brownian", 1, {{"sigma", 1.0}}});
    CHECK(bm.psi_star(3.0) == doctest::Approx(9.0).epsilon(1e-9));
    CHECK(bm.psi_star(0.0) == 0.0);
    auto s = stable(1, 0.5);
    CHECK(s.psi_star(16.0) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("quadrature path reproduces closed forms") {
    SUBCASE("stable d=1") {
        auto m = stable(1, 1.0);
        for (double u : {0.05, 1.0, 20.0}) {
            double err = 0.0;
            const double v = m.psi_quadrature(u, &err);
            CHECK(v == doctest::Approx(m.psi(u)).epsilon(1e-6));
            CHECK(err < 1e-5 * v + 1e-9);
        }
    }
    SUBCASE("stable d=3, alpha=1.5") {
        auto m = stable(3, 1.5);
        for (double u : {0.1, 1.0, 8.0})
            CHECK(m.psi_quadrature(u) == doctest::Approx(m.psi(u)).epsilon(1e-6));
    }
    SUBCASE("relativistic d=3") {
        auto m = make_model({"relativistic-stable", 3, {{"alpha", 1.0}, {"m", 1.0}}});
        for (double u : {0.2, 1.0, 5.0})
            CHECK(m.psi_quadrature(u) == doctest::Approx(m.psi(u)).epsilon(1e-6));
    }
    SUBCASE("variance gamma d=2") {
        auto m = make_model({"variance-gamma", 2, {}});
        for (double u : {0.5, 2.0})
            CHECK(m.psi_quadrature(u) == doctest::Approx(m.psi(u)).epsilon(1e-5));
    }
    SUBCASE("geometric stable d=1 (tabulated density)") {
        auto m = make_model({"geometric-stable", 1, {{"alpha", 1.0}}});
        for (double u : {0.5, 2.0, 10.0})
            CHECK(m.psi_quadrature(u) == doctest::Approx(m.psi(u)).epsilon(2e-3));
    }
}

TEST_CASE("tabulated exponent for families without closed form") {
    auto m = make_model({"tempered-stable", 3, {{"alpha", 1.0}, {"lambda", 1.0}}});
    CHECK(!m.has_closed_psi());
    for (double u : {0.01, 0.3, 4.0, 100.0}) {
        const double direct = m.psi_quadrature(u);
        CHECK(m.psi(u) == doctest::Approx(direct).epsilon(1e-5));
    }
    // Quadratic behavior at large scales (finite second moment), stable-like
    // at small scales.
    CHECK(m.psi(1e-4) / m.psi(2e-4) == doctest::Approx(0.25).epsilon(1e-2));
    CHECK(m.psi(1e3) / m.psi(5e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("exponent sandwich psi <= psi* <= pi^2 psi") {
    auto grid = log_grid(1e-3, 1e3, 4);
    for (const auto& m :
         {stable(1, 0.7), stable(2, 1.5),
          make_model({"variance-gamma", 3, {}}),
          make_model({"truncated-stable", 3, {{"alpha", 1.0}, {"cutoff", 1.0}}})}) {
        for (double u : grid) {
            const double p = m.psi(u);
            const double ps = m.psi_star(u);
            CHECK(std::isfinite(p));
            CHECK(p <= ps * (1.0 + 1e-12));
            CHECK(ps <= kPi * kPi * p * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_model({"isotropic-stable", 1, {{"alpha", 2.5}}}), Error);
    CHECK_THROWS_AS(make_model({"isotropic-stable", 1, {}}), Error);
    CHECK_THROWS_AS(make_model({"brownian", 2, {{"sigma", -1.0}}}), Error);
    CHECK_THROWS_AS(make_model({"no-such-family", 1, {}}), Error);
    CHECK_THROWS_AS(make_model({"relativistic-stable", 3, {{"alpha", 1.0}, {"m", 0.0}}}),
                    Error);
    CHECK_THROWS_AS(
        make_model({"composite-exponent", 2, {{"alpha1", 1.0}, {"alpha4", 0.0}}}),
        Error);  // alpha2+alpha3+alpha4 = 0
}

TEST_CASE("compound Poisson specifications are rejected") {
    // Bounded density with bounded support and no Gaussian part: finite
    // total mass, bounded exponent.
    RadialDensity flat([](double) { return 1.0; }, 1.0);
    CHECK_THROWS_AS(make_custom_model(1, 0.0, flat), Error);
    // Same density plus a Gaussian part is fine.
    CHECK_NOTHROW(make_custom_model(1, 0.5, flat));
}

TEST_CASE("non-monotone densities are rejected") {
    RadialDensity bump([](double r) { return r < 1.0 ? r : std::exp(-r); },
                       std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(make_custom_model(1, 1.0, bump), Error);
}

TEST_CASE("composite exponent reduces to its special cases") {
    // alpha1 = alpha2 = 0, alpha3 = 1: relativistic form.
    auto m = make_model({"composite-exponent",
                         3,
                         {{"alpha3", 1.0}, {"m", 1.0}, {"alpha4", 0.0}}});
    CHECK(m.psi(1.0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
    // alpha1 = 2 collapses the bracket: geometric-stable exponent.
    auto g = make_model(
        {"composite-exponent", 2, {{"alpha1", 2.0}, {"alpha2", 1.0}, {"alpha4", 1.0}}});
    CHECK(g.psi(3.0) == doctest::Approx(std::log1p(3.0)).epsilon(1e-12));
}

TEST_CASE("subordinate brownian recovers stable and gamma densities") {
    // phi(l) = l^{1/2}: the subordinate motion is the Cauchy process.
    auto m = make_subordinate_brownian(1, [](double l) { return std::sqrt(l); });
    auto exact = stable(1, 1.0);
    for (double r : {0.1, 1.0, 10.0})
        CHECK(m.nu()(r) == doctest::Approx(exact.nu()(r)).epsilon(0.05));
    CHECK(m.psi(2.0) == doctest::Approx(2.0));

    // phi(l) = log(1+l): variance gamma.
    auto vg = make_subordinate_brownian(2, [](double l) { return std::log1p(l); });
    auto exact_vg = make_model({"variance-gamma", 2, {}});
    for (double r : {0.5, 2.0})
        CHECK(vg.nu()(r) == doctest::Approx(exact_vg.nu()(r)).epsilon(0.05));
}

TEST_CASE("subordinate brownian validates the Bernstein property") {
    CHECK_THROWS_AS(
        make_subordinate_brownian(1, [](double l) { return l * l; }), Error);
    CHECK_THROWS_AS(
        make_subordinate_brownian(1, [](double l) { return 1.0 + l; }), Error);
}
