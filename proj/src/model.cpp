#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "common.hpp"
#include "grid.hpp"
#include "laplace.hpp"
#include "special.hpp"

namespace lel {

double FamilySpec::get(const std::string& name, double fallback) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    return fallback;
}

double FamilySpec::require(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    throw_invalid("model family '" + family + "' requires parameter '" + name + "'");
}

bool FamilySpec::has(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return true;
    return false;
}

namespace {

double lambda_kernel(int dim, double s) { return 1.0 - radial_cos_kernel(dim, s); }

// Sum of the oscillatory integrals  int_start^inf E(r) Lambda_d(u r) dr over
// half-period windows, accelerated by repeated averaging of partial sums.
// Requires an envelope E that decays to zero.
QuadResult oscillatory_lambda_series(const Fn1& envelope, int dim, double u,
                                     double start, const QuadTol& tol,
                                     int max_windows = 96) {
    QuadResult out;
    const double h = kPi / u;
    auto f = [&](double r) { return envelope(r) * lambda_kernel(dim, u * r); };
    std::vector<double> partial;
    partial.reserve(max_windows);
    double acc = 0.0;
    double panel_err = 0.0;
    double lo = start;
    for (int k = 0; k < max_windows; ++k) {
        QuadResult w = integrate_panel(f, lo, lo + h);
        out.evaluations += w.evaluations;
        acc += w.value;
        panel_err += w.abs_error;
        partial.push_back(acc);
        lo += h;
        if (k >= 3 && std::abs(w.value) < 0.05 * tol.abs_tol) break;
    }
    auto euler = [](std::vector<double> s) {
        while (s.size() > 1) {
            for (std::size_t i = 0; i + 1 < s.size(); ++i)
                s[i] = 0.5 * (s[i] + s[i + 1]);
            s.pop_back();
        }
        return s[0];
    };
    out.value = euler(partial);
    // Error gauged by the sensitivity of the accelerated value to the last
    // window.
    double drop_last = out.value;
    if (partial.size() > 4) {
        std::vector<double> shorter(partial.begin(), partial.end() - 1);
        drop_last = euler(shorter);
    }
    out.abs_error = std::abs(out.value - drop_last) + panel_err;
    out.converged = true;
    return out;
}

// int_b^S E(r) Lambda_d(u r) dr for an eventually-decreasing envelope; S may
// be infinite.  For compact support and many oscillations the integral is
// expressed as a difference of two infinite alternating series sharing a
// smooth power continuation of E past S.
QuadResult oscillatory_lambda_range(const Fn1& envelope, int dim, double u,
                                    double b, double support,
                                    const QuadTol& tol) {
    const bool compact = std::isfinite(support);
    if (!compact)
        return oscillatory_lambda_series(envelope, dim, u, b, tol);
    const double oscillations = u * (support - b) / (2.0 * kPi);
    if (oscillations < 64.0) {
        auto f = [&](double r) {
            return envelope(r) * lambda_kernel(dim, u * r);
        };
        QuadTol t = tol;
        t.max_intervals = 4000;
        return integrate(f, b, support, t);
    }
    const double edge = envelope(support * (1.0 - 1e-9));
    auto extended = [&, edge](double r) {
        if (r < support) return envelope(r);
        const double q = support / r;
        return edge * q * q * q * q;
    };
    QuadResult from_b = oscillatory_lambda_series(extended, dim, u, b, tol);
    QuadResult from_s =
        oscillatory_lambda_series(extended, dim, u, support, tol);
    QuadResult out;
    out.value = from_b.value - from_s.value;
    out.abs_error = from_b.abs_error + from_s.abs_error;
    out.evaluations = from_b.evaluations + from_s.evaluations;
    out.converged = from_b.converged && from_s.converged;
    return out;
}

// Jump part of the characteristic exponent by radial reduction:
//   psi_jump(u) = omega_d int_0^inf nu(r) r^{d-1} radial_cos_kernel(d, u r) dr.
QuadResult psi_jump_quadrature(const RadialDensity& nu, int dim, double u,
                               const QuadTol& tol) {
    QuadResult out;
    if (nu.zero_measure() || u == 0.0) {
        out.converged = true;
        return out;
    }
    const double omega = unit_sphere_surface(dim);
    const double support = nu.support_upper();
    auto envelope = [&](double r) { return nu(r) * std::pow(r, dim - 1); };
    auto integrand = [&](double r) {
        return envelope(r) * radial_cos_kernel(dim, u * r);
    };
    QuadTol piece = tol;
    piece.abs_tol = 0.2 * tol.abs_tol / omega;
    piece.rel_tol = 0.2 * tol.rel_tol;

    const double a = std::min(1.0 / u, support);
    double value = 0.0, err = 0.0;

    // Pre-oscillatory head (0, a]; the kernel is smooth there, nu may blow up
    // at the origin.
    const double m = std::min(1.0, a);
    QuadResult head = integrate_tanh_sinh(integrand, 0.0, m, piece);
    value += head.value;
    err += head.abs_error;
    out.evaluations += head.evaluations;
    if (a > m) {
        QuadResult mid0 = integrate_dyadic_tail(integrand, m, piece, a);
        value += mid0.value;
        err += mid0.abs_error;
        out.evaluations += mid0.evaluations;
    }

    if (support > a) {
        // First oscillations resolved adaptively, then tail mass minus the
        // accelerated oscillatory series.
        const double b = std::min(support, a + 64.0 * kPi / u);
        QuadTol t = piece;
        t.max_intervals = 4000;
        QuadResult mid = integrate(integrand, a, b, t);
        value += mid.value;
        err += mid.abs_error;
        out.evaluations += mid.evaluations;
        if (support > b) {
            QuadResult mass = integrate_dyadic_tail(
                envelope, b, piece,
                std::isfinite(support) ? support : 0.0);
            QuadResult osc =
                oscillatory_lambda_range(envelope, dim, u, b, support, piece);
            value += mass.value - osc.value;
            err += mass.abs_error + osc.abs_error;
            out.evaluations += mass.evaluations + osc.evaluations;
            if (!mass.converged)
                err = std::max(err, std::abs(value));  // force failure upstream
        }
    }
    out.value = omega * value;
    out.abs_error = omega * err;
    out.converged =
        out.abs_error <= std::max(tol.abs_tol, tol.rel_tol * std::abs(out.value));
    return out;
}

}  // namespace

// Cached table of the quadrature exponent for families without a closed form.
class PsiCache {
  public:
    PsiCache(const RadialDensity& nu, int dim, const QuadTol& tol,
             int per_decade) {
        const auto grid = log_grid(1e-8, 1e8, per_decade);
        std::vector<double> vals(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            QuadResult q = psi_jump_quadrature(nu, dim, grid[i], tol);
            if (!q.converged) {
                std::ostringstream msg;
                msg << "characteristic exponent quadrature did not converge at u="
                    << grid[i] << " (achieved error " << q.abs_error << ")";
                throw_numeric(msg.str());
            }
            vals[i] = q.value;
        }
        table_ = LogLogTable(grid, vals);
    }
    double operator()(double u) const { return table_(u); }

  private:
    LogLogTable table_;
};

double LevyModel::psi(double u) const {
    if (u <= 0.0) return 0.0;
    if (psi_closed_) return (*psi_closed_)(u);
    return sigma_ * sigma_ * u * u + (*psi_cache_)(u);
}

double LevyModel::psi_quadrature(double u, double* achieved_error) const {
    if (u < 0.0) throw_invalid("psi: u must be nonnegative");
    QuadResult q = psi_jump_quadrature(nu_, dimension(), u, opts_.quad);
    if (achieved_error) *achieved_error = q.abs_error;
    if (!q.converged) {
        std::ostringstream msg;
        msg << "characteristic exponent quadrature did not converge at u=" << u
            << " (achieved error " << q.abs_error << ")";
        throw_numeric(msg.str());
    }
    return sigma_ * sigma_ * u * u + q.value;
}

double LevyModel::psi_star(double u) const {
    if (u <= 0.0) return 0.0;
    double best = psi(u);
    // Refinement sweep over eight decades below u.
    const int per_decade = 64;
    const double lo = u * 1e-8;
    const int n = 8 * per_decade;
    const double step = std::log(u / lo) / n;
    for (int i = 0; i < n; ++i) {
        const double s = lo * std::exp(step * i);
        best = std::max(best, psi(s));
    }
    return best;
}

std::string LevyModel::describe() const {
    std::ostringstream os;
    os << spec_.family << "(d=" << spec_.dimension;
    for (const auto& [k, v] : spec_.params) os << ", " << k << "=" << v;
    os << ")";
    return os.str();
}

namespace {

// Numeric probe: does int_0^1 nu(r) r^{d-1} dr diverge?  Watches dyadic
// increments of the truncated integral.
bool jump_mass_is_infinite(const RadialDensity& nu, int dim) {
    if (nu.zero_measure()) return false;
    auto envelope = [&](double r) { return nu(r) * std::pow(r, dim - 1); };
    const double upper = std::min(1.0, nu.support_upper());
    double prev = 0.0;
    bool growing = true;
    for (int k = 1; k <= 5; ++k) {
        const double a = upper * std::pow(10.0, -2.0 * k);
        QuadResult q = integrate(envelope, a, upper, {1e-12, 1e-9, 4000});
        if (k > 1 && q.value < prev * 1.5 + 1e-9) {
            growing = false;
            break;
        }
        prev = q.value;
    }
    return growing;
}

void check_unimodal(const RadialDensity& nu) {
    if (nu.zero_measure()) return;
    const double hi = std::isfinite(nu.support_upper())
                          ? nu.support_upper() * (1.0 - 1e-9)
                          : 1e6;
    const auto grid = log_grid(1e-7, hi, 24);
    double prev = nu(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = nu(grid[i]);
        if (v > prev * (1.0 + 1e-9) + 1e-300)
            throw_invalid("jump density must be non-increasing (unimodality)");
        prev = v;
    }
}

// Tabulates a density on a wide log grid.  The raw values come out of
// numerical inversion, so they are floored and monotonized before
// interpolation (the true density is non-increasing).
RadialDensity tabulated_density(const std::function<double(double)>& nu_at) {
    const auto rgrid = log_grid(1e-7, 1e7, 20);
    std::vector<double> vals(rgrid.size());
    for (std::size_t i = 0; i < rgrid.size(); ++i)
        vals[i] = std::max(nu_at(rgrid[i]), 1e-300);
    for (std::size_t i = 1; i < vals.size(); ++i)
        vals[i] = std::min(vals[i], vals[i - 1]);
    LogLogTable table(rgrid, vals);
    return RadialDensity([table](double r) { return table(r); });
}

double sbm_drift(const Fn1& phi) {
    // lim phi(lambda)/lambda; phi is concave so the ratio decreases.
    const double big = 1e14;
    const double b = phi(big) / big;
    return b > 1e-8 ? b : 0.0;
}

// Tabulated jump density of a subordinate Brownian motion from the tail
// function M(t) of the subordinator's Levy measure, computed by inverting
// (phi(s) - drift s)/s.
RadialDensity sbm_density_from_phi(int dim, const Fn1& phi, double drift) {
    const auto weights = gaver_stehfest_weights(14);
    auto transform = [&](double s) { return (phi(s) - drift * s) / s; };
    const auto tgrid = log_grid(1e-9, 1e9, 24);
    std::vector<double> ltail(tgrid.size());
    std::vector<double> lt(tgrid.size());
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
        double v = gaver_stehfest(transform, tgrid[i], weights);
        if (!(v > 0.0)) v = 1e-300;  // numerically extinct tail
        ltail[i] = std::log(v);
        lt[i] = std::log(tgrid[i]);
    }
    PchipTable log_tail(lt, ltail);
    // m(t) = -M'(t) through the interpolated log-derivative.
    auto density_t = [log_tail](double t) {
        const double l = std::log(t);
        const double m = -log_tail.derivative(l) * std::exp(log_tail(l)) / t;
        return std::max(m, 0.0);
    };
    const double pref = std::pow(4.0 * kPi, -0.5 * dim);
    auto nu_at = [=](double r) {
        auto f = [&](double t) {
            return pref * std::pow(t, -0.5 * dim) *
                   std::exp(-r * r / (4.0 * t)) * density_t(t);
        };
        // The kernel peaks near t ~ r^2; integrate outward from there.
        const double center = std::max(r * r / (2.0 * dim + 2.0), 1e-12);
        QuadTol tol{0.0, 1e-8, 600};
        QuadResult left = integrate_tanh_sinh(f, center * 1e-6, center, tol);
        QuadResult right = integrate_dyadic_tail(f, center, tol);
        return left.value + right.value;
    };
    return tabulated_density(nu_at);
}

RadialDensity geometric_stable_density(int dim, double alpha) {
    const double rho = 0.5 * alpha;
    const double pref =
        2.0 * rho * std::pow(4.0 * kPi, -0.5 * dim);
    auto nu_at = [=](double r) {
        auto f = [=](double s) {
            return mittag_leffler_spectral(rho, s) *
                   std::pow(4.0 * s / (r * r), 0.25 * dim) *
                   bessel_k(0.5 * dim, r * std::sqrt(s));
        };
        QuadTol tol{0.0, 1e-9, 800};
        // Spectral density may peak near s = 1 (rho close to 1).
        QuadResult head = integrate_tanh_sinh(f, 0.0, 1.0, tol);
        QuadResult tail = integrate_dyadic_tail(f, 1.0, tol);
        return pref * (head.value + tail.value);
    };
    return tabulated_density(nu_at);
}

void require_range(bool ok, const std::string& what) {
    if (!ok) throw_invalid(what);
}

}  // namespace

void LevyModel::finalize_construction() {
    if (spec_.dimension < 1)
        throw_invalid("dimension must be a positive integer");
    if (sigma_ < 0.0) throw_invalid("sigma must be nonnegative");

    if (!nu_.zero_measure()) {
        check_unimodal(nu_);
        const double omega = unit_sphere_surface(dimension());
        auto second = [&](double r) {
            return nu_(r) * std::pow(r, dimension() + 1);
        };
        auto mass = [&](double r) {
            return nu_(r) * std::pow(r, dimension() - 1);
        };
        QuadResult q2 = integrate_tanh_sinh(second, 0.0, std::min(1.0, nu_.support_upper()),
                                            {1e-10, 1e-7, 2000});
        QuadResult qm = integrate_dyadic_tail(
            mass, 1.0, {1e-10, 1e-7, 2000},
            std::isfinite(nu_.support_upper()) ? nu_.support_upper() : 0.0);
        if (!std::isfinite(q2.value) || !qm.converged || !std::isfinite(qm.value))
            throw_invalid(
                "jump density violates the Levy integrability condition");
        levy_integral_ = omega * (q2.value + qm.value);
    }

    const bool unbounded_psi =
        sigma_ > 0.0 || jump_mass_is_infinite(nu_, dimension());
    if (!unbounded_psi)
        throw_invalid(
            "specification has a bounded characteristic exponent (compound "
            "Poisson); an unbounded exponent is required");

    if (!psi_closed_)
        psi_cache_ = std::make_shared<PsiCache>(nu_, dimension(), opts_.quad,
                                                opts_.psi_table_per_decade);
}

LevyModel make_custom_model(int dim, double sigma, RadialDensity nu,
                            std::optional<Fn1> psi_closed, FamilySpec spec,
                            const ModelOptions& opts) {
    LevyModel m;
    m.spec_ = std::move(spec);
    m.spec_.dimension = dim;
    m.sigma_ = sigma;
    m.nu_ = std::move(nu);
    m.psi_closed_ = std::move(psi_closed);
    m.opts_ = opts;
    m.finalize_construction();
    return m;
}

LevyModel make_subordinate_brownian(int dim, Fn1 phi, const ModelOptions& opts) {
    // Spot-check the Bernstein property: phi(0+) = 0, increasing, concave.
    if (std::abs(phi(1e-12)) > 1e-6)
        throw_invalid("subordinate-brownian: phi(0+) must vanish (no killing)");
    double prev = 0.0;
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (double l : log_grid(1e-6, 1e6, 4)) {
        const double v = phi(l);
        if (!(v >= prev)) throw_invalid("subordinate-brownian: phi must be non-decreasing");
        const double ratio = v / l;
        if (ratio > prev_ratio * (1.0 + 1e-6))
            throw_invalid("subordinate-brownian: phi/lambda must be non-increasing");
        prev = v;
        prev_ratio = ratio;
    }
    const double drift = sbm_drift(phi);
    FamilySpec spec{"subordinate-brownian", dim, {}};
    Fn1 closed = [phi](double u) { return phi(u * u); };
    return make_custom_model(dim, std::sqrt(drift),
                             sbm_density_from_phi(dim, phi, drift), closed,
                             std::move(spec), opts);
}

LevyModel make_model(const FamilySpec& spec, const ModelOptions& opts) {
    const int d = spec.dimension;
    const std::string& fam = spec.family;
    auto stable_nu = [&](double alpha, double support) {
        const double coef = stable_density_coefficient(d, alpha);
        return RadialDensity(
            [coef, d, alpha](double r) { return coef * std::pow(r, -d - alpha); },
            support);
    };
    const double inf = std::numeric_limits<double>::infinity();

    if (fam == "brownian") {
        const double sigma = spec.get("sigma", 1.0);
        require_range(sigma > 0.0, "brownian: sigma must be positive");
        return make_custom_model(
            d, sigma, RadialDensity{},
            Fn1([sigma](double u) { return sigma * sigma * u * u; }), spec, opts);
    }
    if (fam == "isotropic-stable") {
        const double alpha = spec.require("alpha");
        require_range(alpha > 0.0 && alpha <= 2.0,
                      "isotropic-stable: alpha must lie in (0, 2]");
        if (alpha == 2.0)
            return make_custom_model(d, 1.0, RadialDensity{},
                                     Fn1([](double u) { return u * u; }), spec,
                                     opts);
        return make_custom_model(
            d, 0.0, stable_nu(alpha, inf),
            Fn1([alpha](double u) { return std::pow(u, alpha); }), spec, opts);
    }
    if (fam == "stable-plus-brownian") {
        const double alpha = spec.require("alpha");
        const double sigma = spec.get("sigma", 1.0);
        require_range(alpha > 0.0 && alpha < 2.0,
                      "stable-plus-brownian: alpha must lie in (0, 2)");
        require_range(sigma > 0.0, "stable-plus-brownian: sigma must be positive");
        return make_custom_model(
            d, sigma, stable_nu(alpha, inf),
            Fn1([alpha, sigma](double u) {
                return sigma * sigma * u * u + std::pow(u, alpha);
            }),
            spec, opts);
    }
    if (fam == "relativistic-stable") {
        const double alpha = spec.require("alpha");
        const double mass = spec.get("m", 1.0);
        require_range(alpha > 0.0 && alpha < 2.0,
                      "relativistic-stable: alpha must lie in (0, 2)");
        require_range(mass > 0.0, "relativistic-stable: m must be positive");
        // Tempered one-sided stable subordinator composed with Brownian
        // motion; the time integral reduces to a Bessel K.
        const double pref = alpha / (2.0 * std::tgamma(1.0 - 0.5 * alpha)) *
                            std::pow(4.0 * kPi, -0.5 * d) * 2.0;
        const double sm = std::sqrt(mass);
        RadialDensity nu(
            [pref, mass, sm, d, alpha](double r) {
                return pref * std::pow(4.0 * mass / (r * r), 0.25 * (d + alpha)) *
                       bessel_k(0.5 * (d + alpha), sm * r);
            },
            inf);
        Fn1 closed = [alpha, mass](double u) {
            return std::pow(u * u + mass, 0.5 * alpha) - std::pow(mass, 0.5 * alpha);
        };
        return make_custom_model(d, 0.0, std::move(nu), closed, spec, opts);
    }
    if (fam == "tempered-stable") {
        const double alpha = spec.require("alpha");
        const double rate = spec.get("lambda", 1.0);
        require_range(alpha > 0.0 && alpha < 2.0,
                      "tempered-stable: alpha must lie in (0, 2)");
        require_range(rate > 0.0, "tempered-stable: lambda must be positive");
        const double coef = stable_density_coefficient(d, alpha);
        RadialDensity nu(
            [coef, d, alpha, rate](double r) {
                return coef * std::pow(r, -d - alpha) * std::exp(-rate * r);
            },
            inf);
        return make_custom_model(d, 0.0, std::move(nu), std::nullopt, spec, opts);
    }
    if (fam == "truncated-stable") {
        const double alpha = spec.require("alpha");
        const double cutoff = spec.get("cutoff", 1.0);
        require_range(alpha > 0.0 && alpha < 2.0,
                      "truncated-stable: alpha must lie in (0, 2)");
        require_range(cutoff > 0.0, "truncated-stable: cutoff must be positive");
        return make_custom_model(d, 0.0, stable_nu(alpha, cutoff), std::nullopt,
                                 spec, opts);
    }
    if (fam == "layered-stable") {
        const double alpha = spec.require("alpha");
        const double alpha1 = spec.require("alpha1");
        require_range(alpha > 0.0 && alpha < 2.0,
                      "layered-stable: alpha must lie in (0, 2)");
        require_range(alpha1 > 0.0, "layered-stable: alpha1 must be positive");
        const double coef = stable_density_coefficient(d, alpha);
        RadialDensity nu(
            [coef, d, alpha, alpha1](double r) {
                return coef * (r < 1.0 ? std::pow(r, -d - alpha)
                                       : std::pow(r, -d - alpha1));
            },
            inf);
        return make_custom_model(d, 0.0, std::move(nu), std::nullopt, spec, opts);
    }
    if (fam == "geometric-stable") {
        const double alpha = spec.require("alpha");
        require_range(alpha > 0.0 && alpha < 2.0,
                      "geometric-stable: alpha must lie in (0, 2)");
        Fn1 closed = [alpha](double u) {
            return std::log1p(std::pow(u, alpha));
        };
        return make_custom_model(d, 0.0, geometric_stable_density(d, alpha),
                                 closed, spec, opts);
    }
    if (fam == "variance-gamma") {
        const double pref = std::pow(2.0, 1.0 - 0.5 * d) * std::pow(kPi, -0.5 * d);
        RadialDensity nu(
            [pref, d](double r) {
                return pref * std::pow(r, -0.5 * d) * bessel_k(0.5 * d, r);
            },
            inf);
        Fn1 closed = [](double u) { return std::log1p(u * u); };
        return make_custom_model(d, 0.0, std::move(nu), closed, spec, opts);
    }
    if (fam == "composite-exponent") {
        const double a1 = spec.get("alpha1", 0.0);
        const double a2 = spec.get("alpha2", 0.0);
        const double a3 = spec.get("alpha3", 0.0);
        const double a4 = spec.get("alpha4", 0.0);
        const double mass = spec.get("m", 0.0);
        for (double a : {a1, a2, a3, a4})
            require_range(a >= 0.0 && a <= 2.0,
                          "composite-exponent: indices must lie in [0, 2]");
        require_range(a1 + a2 + a3 > 0.0,
                      "composite-exponent: alpha1+alpha2+alpha3 must be positive");
        require_range(a2 + a3 + a4 > 0.0,
                      "composite-exponent: alpha2+alpha3+alpha4 must be positive");
        require_range(mass >= 0.0, "composite-exponent: m must be nonnegative");
        // Bernstein function with the convention that a term with zero index
        // is absent.
        Fn1 phi = [=](double l) {
            double base = 0.0;
            if (a2 > 0.0) base += std::pow(l, 0.5 * a2);
            if (a3 > 0.0)
                base += std::pow(l + mass, 0.5 * a3) - std::pow(mass, 0.5 * a3);
            double out = std::pow(base, 1.0 - 0.5 * a1);
            if (a1 > 0.0)
                out *= std::pow(std::log1p(std::pow(l, 0.5 * a4)), 0.5 * a1);
            return out;
        };
        const double drift = sbm_drift(phi);
        Fn1 closed = [phi](double u) { return phi(u * u); };
        return make_custom_model(d, std::sqrt(drift),
                                 sbm_density_from_phi(d, phi, drift), closed,
                                 spec, opts);
    }
    throw_invalid("unknown model family '" + fam + "'");
}

}  // namespace lel
