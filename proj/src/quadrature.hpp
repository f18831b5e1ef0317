#pragma once

#include <functional>

namespace lel {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;   // estimated
    bool converged = false;
    long evaluations = 0;
};

struct QuadTol {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    int max_intervals = 2000;
};

using Fn1 = std::function<double(double)>;

// Adaptive Gauss-Kronrod 15(7) on a finite interval.
QuadResult integrate(const Fn1& f, double a, double b, const QuadTol& tol = {});

// Tanh-sinh rule on (a, b); tolerates integrable endpoint singularities
// (log or power < 1). The integrand is never evaluated at the endpoints.
QuadResult integrate_tanh_sinh(const Fn1& f, double a, double b,
                               const QuadTol& tol = {});

// Integral over [a, infinity) for absolutely integrable integrands, summed
// over dyadic windows [a 2^k, a 2^{k+1}] until the window contribution is
// negligible. `hard_upper` truncates the range exactly (compact support).
QuadResult integrate_dyadic_tail(const Fn1& f, double a, const QuadTol& tol = {},
                                 double hard_upper = 0.0 /* 0 = none */);

// A single non-adaptive Gauss-Kronrod 15(7) panel with its error estimate.
QuadResult integrate_panel(const Fn1& f, double a, double b);

}  // namespace lel
