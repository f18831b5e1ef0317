#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "common.hpp"

namespace lel {
namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1,1] (7-point Gauss embedded).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Fn1& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    evals += 15;
    double result_g = fc * kWg[3];
    double result_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        result_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
    }
    result_g *= h;
    result_k *= h;
    double err = std::abs(result_k - result_g);
    // Standard QUADPACK-style sharpening of the raw difference.
    if (err > 0.0) err = std::pow(200.0 * err, 1.5);
    err = std::min(err, std::abs(result_k - result_g) * 200.0);
    if (err == 0.0) err = std::abs(result_k) * 1e-16;
    return Panel{a, b, result_k, err};
}

}  // namespace

QuadResult integrate(const Fn1& f, double a, double b, const QuadTol& tol) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::priority_queue<Panel> panels;
    panels.push(gk15(f, a, b, out.evaluations));
    double total = panels.top().value;
    double total_err = panels.top().error;
    int n = 1;
    while (n < tol.max_intervals) {
        const double goal =
            std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
        if (total_err <= goal) break;
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at machine resolution; keep its estimate.
            total_err = std::max(0.0, total_err - 0.9 * worst.error);
            Panel kept = worst;
            kept.error *= 0.1;
            panels.push(kept);
            ++n;
            continue;
        }
        Panel left = gk15(f, worst.a, mid, out.evaluations);
        Panel right = gk15(f, mid, worst.b, out.evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++n;
    }
    out.value = sign * total;
    out.abs_error = total_err;
    out.converged =
        total_err <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
    return out;
}

QuadResult integrate_tanh_sinh(const Fn1& f, double a, double b,
                               const QuadTol& tol) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double half = 0.5 * (b - a);
    // x = mid + half tanh(pi/2 sinh t).  The offsets from the endpoints are
    // kept in the cancellation-free form half (1 - tanh z) = half 2/(1+e^{2z})
    // so singular endpoints keep their tail contributions down to the
    // underflow threshold.
    const double tmax = 6.56;
    auto eval_level = [&](double step, bool odd_only) {
        double sum = 0.0;
        for (double t = odd_only ? step : 0.0; t <= tmax;
             t += odd_only ? 2.0 * step : step) {
            const double z = 0.5 * kPi * std::sinh(t);
            if (2.0 * z > 700.0) break;  // offset underflows
            const double e2z = std::exp(-2.0 * z);
            const double offset = half * 2.0 * e2z / (1.0 + e2z);
            const double w =
                2.0 * kPi * std::cosh(t) * e2z / ((1.0 + e2z) * (1.0 + e2z));
            const double x_right = b - offset;
            const double x_left = a + offset;
            {
                const double v = f(x_right);
                if (std::isfinite(v)) sum += w * v;
                ++out.evaluations;
            }
            if (t > 0.0) {
                const double v = f(x_left);
                if (std::isfinite(v)) sum += w * v;
                ++out.evaluations;
            }
        }
        return sum;
    };
    double step = 1.0;
    double total = eval_level(step, false) * step;
    for (int level = 0; level < 10; ++level) {
        step *= 0.5;
        const double refinement = eval_level(step, true) * step;
        const double next = 0.5 * total + refinement;
        out.abs_error = std::abs(next - total);
        total = next;
        const double goal =
            std::max(tol.abs_tol, tol.rel_tol * std::abs(half * total));
        if (level >= 2 && out.abs_error * half <= goal) {
            out.converged = true;
            break;
        }
    }
    out.value = sign * half * total;
    out.abs_error *= half;
    return out;
}

QuadResult integrate_panel(const Fn1& f, double a, double b) {
    QuadResult out;
    Panel p = gk15(f, a, b, out.evaluations);
    out.value = p.value;
    out.abs_error = p.error;
    out.converged = true;
    return out;
}

QuadResult integrate_dyadic_tail(const Fn1& f, double a, const QuadTol& tol,
                                 double hard_upper) {
    QuadResult out;
    if (hard_upper > 0.0 && hard_upper <= a) {
        out.converged = true;
        return out;
    }
    QuadTol window_tol = tol;
    window_tol.abs_tol = tol.abs_tol * 0.25;
    window_tol.rel_tol = tol.rel_tol * 0.25;
    double lo = a;
    double total = 0.0;
    double err = 0.0;
    int quiet_windows = 0;
    const int max_windows = 80;  // 2^80 dynamic range is past double anyway
    for (int k = 0; k < max_windows; ++k) {
        double hi = lo * 2.0;
        bool last = false;
        if (hard_upper > 0.0 && hi >= hard_upper) {
            hi = hard_upper;
            last = true;
        }
        QuadResult w = integrate(f, lo, hi, window_tol);
        out.evaluations += w.evaluations;
        total += w.value;
        err += w.abs_error;
        if (last) {
            quiet_windows = 2;
            break;
        }
        const double goal =
            std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
        if (std::abs(w.value) + w.abs_error <= 0.25 * goal)
            ++quiet_windows;
        else
            quiet_windows = 0;
        if (quiet_windows >= 2) break;
        lo = hi;
    }
    out.value = total;
    out.abs_error = err;
    out.converged =
        quiet_windows >= 2 &&
        err <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
    return out;
}

}  // namespace lel
