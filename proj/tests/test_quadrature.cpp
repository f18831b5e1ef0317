#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "grid.hpp"
#include "laplace.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "special.hpp"

using namespace lel;

TEST_CASE("adaptive rule on smooth and peaked integrands") {
    auto r1 = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
    CHECK(r1.converged);
    CHECK(r1.value == doctest::Approx(2.0).epsilon(1e-12));

    // Narrow Gaussian bump inside a wide interval.
    auto r2 = integrate(
        [](double x) { return std::exp(-400.0 * (x - 0.3) * (x - 0.3)); }, 0.0,
        10.0);
    CHECK(r2.converged);
    CHECK(r2.value == doctest::Approx(std::sqrt(kPi) / 20.0).epsilon(1e-9));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
    auto r = integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(x); },
                                 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));

    auto rl = integrate_tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(rl.value == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("dyadic tail integration") {
    auto r = integrate_dyadic_tail([](double x) { return std::exp(-x); }, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

    // Power tail.
    auto p = integrate_dyadic_tail([](double x) { return std::pow(x, -2.5); }, 2.0);
    CHECK(p.value == doctest::Approx(std::pow(2.0, -1.5) / 1.5).epsilon(1e-8));

    // Hard upper cutoff.
    auto c = integrate_dyadic_tail([](double) { return 1.0; }, 1.0, {}, 5.0);
    CHECK(c.value == doctest::Approx(4.0).epsilon(1e-12));
}

namespace {

// Oracle: 1 - E[cos(s W)] for W the first coordinate of a uniform point on
// the sphere, with density proportional to (1-w^2)^{(d-3)/2} on [-1, 1].
double kernel_oracle(int d, double s) {
    if (d == 1) return 1.0 - std::cos(s);
    auto weight = [d](double w) { return std::pow(1.0 - w * w, 0.5 * (d - 3)); };
    auto num = integrate_tanh_sinh(
        [&](double w) { return std::cos(s * w) * weight(w); }, -1.0, 1.0,
        {1e-13, 1e-11});
    auto den = integrate_tanh_sinh(weight, -1.0, 1.0, {1e-13, 1e-11});
    return 1.0 - num.value / den.value;
}

}  // namespace

TEST_CASE("radial cosine kernel matches the sphere-average oracle") {
    for (int d : {1, 2, 3, 4, 7}) {
        CHECK(radial_cos_kernel(d, 0.0) == 0.0);
        for (double s : {0.3, 0.9999, 1.0001, 2.0, 9.0}) {
            CHECK(radial_cos_kernel(d, s) ==
                  doctest::Approx(kernel_oracle(d, s)).epsilon(1e-9));
        }
        // Small-argument quadratic behavior s^2/(2d).
        const double s = 1e-4;
        CHECK(radial_cos_kernel(d, s) ==
              doctest::Approx(s * s / (2.0 * d)).epsilon(1e-6));
    }
    CHECK(radial_cos_kernel(1, 2.0) == doctest::Approx(1.0 - std::cos(2.0)));
    CHECK(radial_cos_kernel(3, 2.0) ==
          doctest::Approx(1.0 - std::sin(2.0) / 2.0));
}

TEST_CASE("gaver-stehfest inverts simple transforms") {
    const auto w = gaver_stehfest_weights(14);
    // The alternating weights reach ~2e8, so double precision leaves a
    // residual around 1e-8 even on exactly representable transforms.
    for (double t : {0.1, 1.0, 7.0}) {
        CHECK(gaver_stehfest([](double s) { return 1.0 / s; }, t, w) ==
              doctest::Approx(1.0).epsilon(1e-7));
    }
    // F(s) = 1/s^2 -> f = t
    CHECK(gaver_stehfest([](double s) { return 1.0 / (s * s); }, 3.0, w) ==
          doctest::Approx(3.0).epsilon(1e-7));
    // F(s) = 1/(s+1) -> f = exp(-t)
    CHECK(gaver_stehfest([](double s) { return 1.0 / (s + 1.0); }, 1.0, w) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("pchip is monotone and exact on linear data") {
    PchipTable t({0.0, 1.0, 2.0, 4.0}, {1.0, 3.0, 5.0, 9.0});
    CHECK(t(0.5) == doctest::Approx(2.0));
    CHECK(t(3.0) == doctest::Approx(7.0));
    CHECK(t(5.0) == doctest::Approx(11.0));  // linear extrapolation
    CHECK(t.derivative(1.5) == doctest::Approx(2.0));

    LogLogTable p(log_grid(0.01, 100.0, 8),
                  [] {
                      auto g = log_grid(0.01, 100.0, 8);
                      std::vector<double> y(g.size());
                      for (std::size_t i = 0; i < g.size(); ++i)
                          y[i] = 2.0 * std::pow(g[i], 1.5);
                      return y;
                  }());
    CHECK(p(0.5) == doctest::Approx(2.0 * std::pow(0.5, 1.5)).epsilon(1e-6));
    CHECK(p(1e4) == doctest::Approx(2e6).epsilon(1e-4));  // power continuation
}

TEST_CASE("philox known-answer vectors") {
    // Reference outputs for philox4x32-10 from the Random123 test vectors.
    auto zero = Philox::generate({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    auto pi = Philox::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                               {0xa4093822u, 0x299f31d0u});
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("philox-derived distributions have the right moments") {
    Philox rng(42, 7);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sq += g * g;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));

    double pmean = 0.0;
    for (int i = 0; i < 20000; ++i) pmean += rng.poisson(3.7);
    CHECK(pmean / 20000 == doctest::Approx(3.7).epsilon(0.03));
    double pbig = 0.0;
    for (int i = 0; i < 20000; ++i) pbig += rng.poisson(120.0);
    CHECK(pbig / 20000 == doctest::Approx(120.0).epsilon(0.01));

    // Laplace transform of the one-sided stable sampler: E exp(-l S) = exp(-l^rho).
    for (double rho : {0.5, 0.8}) {
        double acc = 0.0;
        const int m = 100000;
        Philox r2(11, 3);
        for (int i = 0; i < m; ++i) acc += std::exp(-2.0 * r2.positive_stable(rho));
        const double expected = std::exp(-std::pow(2.0, rho));
        CHECK(acc / m == doctest::Approx(expected).epsilon(0.02));
    }
}

TEST_CASE("streams are independent of draw interleaving") {
    Philox a(123, 0), b(123, 1);
    std::vector<double> seq_a, seq_b;
    for (int i = 0; i < 16; ++i) seq_a.push_back(a.next_double());
    for (int i = 0; i < 16; ++i) seq_b.push_back(b.next_double());

    Philox a2(123, 0), b2(123, 1);
    for (int i = 0; i < 16; ++i) {
        CHECK(a2.next_double() == seq_a[i]);
        CHECK(b2.next_double() == seq_b[i]);
    }
}
