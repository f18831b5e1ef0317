#include "special.hpp"

#include <cmath>
#include <limits>

#include "common.hpp"

namespace lel {

namespace {

// Power series of 1 - Lambda_d(s); accurate and cancellation-free for small s.
double kernel_series(int dim, double s) {
    const double q = -0.25 * s * s;
    double term = 1.0;  // tracks (q)^k Gamma(d/2) / (k! Gamma(k + d/2))
    double sum = 0.0;
    for (int k = 1; k <= 40; ++k) {
        term *= q / (static_cast<double>(k) * (k - 1 + 0.5 * dim));
        sum -= term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
    }
    return sum;
}

}  // namespace

double radial_cos_kernel(int dim, double s) {
    s = std::abs(s);
    if (s == 0.0) return 0.0;
    // The series switchover is fixed at s = 1: below it the direct forms lose
    // up to two digits to cancellation, above it they are exact or library
    // Bessel calls.
    if (s < 1.0) return kernel_series(dim, s);
    switch (dim) {
        case 1:
            return 1.0 - std::cos(s);
        case 2:
            return 1.0 - std::cyl_bessel_j(0.0, s);
        case 3:
            return 1.0 - std::sin(s) / s;
        default: {
            const double order = 0.5 * dim - 1.0;
            const double lam = std::tgamma(0.5 * dim) *
                               std::pow(2.0 / s, order) *
                               std::cyl_bessel_j(order, s);
            return 1.0 - lam;
        }
    }
}

double stable_density_coefficient(int dim, double alpha) {
    return alpha * std::pow(2.0, alpha - 1.0) *
           std::tgamma(0.5 * (dim + alpha)) /
           (std::pow(kPi, 0.5 * dim) * std::tgamma(1.0 - 0.5 * alpha));
}

double mittag_leffler_spectral(double rho, double r) {
    if (r <= 0.0) return 0.0;
    const double sp = std::sin(rho * kPi);
    const double cp = std::cos(rho * kPi);
    const double rp = std::pow(r, rho);
    return (1.0 / kPi) * sp * std::pow(r, rho - 1.0) /
           (rp * rp + 2.0 * rp * cp + 1.0);
}

double bessel_k(double order, double x) {
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    if (x > 700.0) return 0.0;  // below double underflow anyway
    return std::cyl_bessel_k(order, x);
}

}  // namespace lel
