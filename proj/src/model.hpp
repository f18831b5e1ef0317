#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadrature.hpp"

namespace lel {

// Radial Levy density r -> nu(r).  Zero beyond the support bound.
class RadialDensity {
  public:
    RadialDensity() = default;  // identically zero
    RadialDensity(Fn1 eval, double support_upper =
                                std::numeric_limits<double>::infinity())
        : eval_(std::move(eval)), support_(support_upper) {}

    double operator()(double r) const {
        if (!eval_ || r <= 0.0 || r >= support_) return 0.0;
        return eval_(r);
    }
    double support_upper() const { return support_; }
    bool zero_measure() const { return !eval_; }

  private:
    Fn1 eval_;
    double support_ = 0.0;
};

struct FamilySpec {
    std::string family;
    int dimension = 1;
    std::vector<std::pair<std::string, double>> params;

    double get(const std::string& name, double fallback) const;
    double require(const std::string& name) const;
    bool has(const std::string& name) const;
};

struct ModelOptions {
    QuadTol quad;                    // exponent quadrature tolerances
    int psi_table_per_decade = 32;   // cache resolution for quadrature-psi
};

// An isotropic unimodal Levy process specification: dimension, Gaussian
// coefficient sigma (characteristic exponent sigma^2 |xi|^2 + jump part, so
// the per-coordinate Brownian variance rate is 2 sigma^2), and a radial
// non-increasing jump density.  Immutable after construction; all evaluation
// methods are const and safe to call concurrently.
class LevyModel {
  public:
    int dimension() const { return spec_.dimension; }
    double sigma() const { return sigma_; }
    const RadialDensity& nu() const { return nu_; }
    const FamilySpec& spec() const { return spec_; }
    const ModelOptions& options() const { return opts_; }
    bool has_closed_psi() const { return static_cast<bool>(psi_closed_); }

    // Characteristic exponent at radial frequency u >= 0.  Uses the closed
    // form when the family has one, otherwise a cached table built from the
    // jump-density quadrature.
    double psi(double u) const;

    // Always evaluates psi through the radial quadrature of the jump part
    // (plus the exact Gaussian term); the verification path for families
    // with a closed form.  Throws if the quadrature cannot reach tolerance.
    double psi_quadrature(double u, double* achieved_error = nullptr) const;

    // Maximal characteristic function sup_{0<=s<=u} psi(s), evaluated on a
    // refinement grid.
    double psi_star(double u) const;

    // omega_d * int (r^2 ^ 1) nu(r) r^{d-1} dr, fixed at construction.
    double levy_integral() const { return levy_integral_; }

    std::string describe() const;

  private:
    friend LevyModel make_model(const FamilySpec&, const ModelOptions&);
    friend LevyModel make_custom_model(int, double, RadialDensity,
                                       std::optional<Fn1>, FamilySpec,
                                       const ModelOptions&);
    LevyModel() = default;
    void finalize_construction();

    FamilySpec spec_;
    double sigma_ = 0.0;
    RadialDensity nu_;
    std::optional<Fn1> psi_closed_;
    ModelOptions opts_;
    double levy_integral_ = 0.0;
    std::shared_ptr<const class PsiCache> psi_cache_;  // set when no closed form
};

// Builds a catalogue model.  Families:
//   brownian                sigma
//   isotropic-stable        alpha
//   stable-plus-brownian    alpha, sigma
//   relativistic-stable     alpha, m
//   tempered-stable         alpha, lambda
//   truncated-stable        alpha, cutoff
//   layered-stable          alpha, alpha1
//   geometric-stable        alpha
//   variance-gamma          (none)
//   composite-exponent      alpha1..alpha4, m
// Parameter ranges are validated; specifications with bounded exponent
// (compound Poisson) are rejected.
LevyModel make_model(const FamilySpec& spec, const ModelOptions& opts = {});

// Subordinate Brownian motion X_t = B(2 eta_t) for a user-supplied Bernstein
// function phi (Laplace exponent of eta, no killing term), so that
// psi(u) = phi(u^2).  The jump density is recovered numerically from phi.
LevyModel make_subordinate_brownian(int dim, Fn1 bernstein_phi,
                                    const ModelOptions& opts = {});

// Fully custom specification; invariants (unimodality, Levy integrability,
// unbounded exponent) are checked numerically at construction.
LevyModel make_custom_model(int dim, double sigma, RadialDensity nu,
                            std::optional<Fn1> psi_closed = std::nullopt,
                            FamilySpec spec = {"custom", 0, {}},
                            const ModelOptions& opts = {});

}  // namespace lel
