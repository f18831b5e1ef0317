#pragma once

namespace lel {

// Spherical average of 1 - cos along a ray:
//   radial_cos_kernel(d, s) = 1 - E[cos(s W)],  W = first coordinate of a
// uniform point on the unit sphere in R^d.  Equals 1 - cos(s) for d = 1,
// 1 - J0(s) for d = 2, 1 - sin(s)/s for d = 3, and in general
// 1 - Gamma(d/2) (2/s)^{d/2-1} J_{d/2-1}(s).  Values lie in [0, 2].
double radial_cos_kernel(int dim, double s);

// Coefficient of the isotropic alpha-stable Levy density in R^d with
// characteristic exponent |xi|^alpha:  nu(r) = stable_density_coefficient *
// r^{-d-alpha}.
double stable_density_coefficient(int dim, double alpha);

// Spectral density of the Mittag-Leffler relaxation function:
//   E_rho(-t^rho) = int_0^inf exp(-r t) mittag_leffler_spectral(rho, r) dr,
// valid for 0 < rho < 1.
double mittag_leffler_spectral(double rho, double r);

// Modified Bessel function of the second kind with overflow-safe limits.
double bessel_k(double order, double x);

}  // namespace lel
