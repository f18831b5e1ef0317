#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "common.hpp"

namespace lel {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).  A stream is
// identified by (seed, stream id); the 128-bit counter advances block by
// block, so replicas can be generated independently on any number of threads
// and still produce identical output.
class Philox {
  public:
    Philox(std::uint64_t seed, std::uint64_t stream) {
        key_[0] = static_cast<std::uint32_t>(seed);
        key_[1] = static_cast<std::uint32_t>(seed >> 32);
        base_[0] = 0;
        base_[1] = 0;
        base_[2] = static_cast<std::uint32_t>(stream);
        base_[3] = static_cast<std::uint32_t>(stream >> 32);
    }

    std::uint32_t next_u32() {
        if (idx_ == 4) {
            block_ = generate(base_, key_);
            advance();
            idx_ = 0;
        }
        return block_[idx_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on the open interval (0, 1).
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential() { return -std::log(next_double()); }

    // Standard normal; Box-Muller, one spare cached per stream.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    long long poisson(double mean);

    // One-sided stable variable with Laplace transform exp(-lambda^rho),
    // 0 < rho < 1 (Kanter's representation).
    double positive_stable(double rho) {
        const double theta = kPi * next_double();
        const double w = exponential();
        const double a = std::pow(std::sin(rho * theta), rho) *
                         std::pow(std::sin((1.0 - rho) * theta), 1.0 - rho) /
                         std::sin(theta);
        // a(theta)^{1/(1-rho)} / W^{(1-rho)/rho} in a numerically tame order
        return std::pow(std::pow(a, 1.0 / (1.0 - rho)) / w,
                        (1.0 - rho) / rho);
    }

    // Symmetric alpha-stable with characteristic function exp(-|u|^alpha)
    // (Chambers-Mallows-Stuck).
    double symmetric_stable(double alpha) {
        const double u = kPi * (next_double() - 0.5);
        if (alpha == 1.0) return std::tan(u);
        const double w = exponential();
        return std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
               std::pow(std::cos(u - alpha * u) / w, (1.0 - alpha) / alpha);
    }

    // Uniform direction on the unit sphere in R^d (Gaussian normalization).
    void unit_vector(int dim, double* out) {
        if (dim == 1) {
            out[0] = next_double() < 0.5 ? -1.0 : 1.0;
            return;
        }
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (int i = 0; i < dim; ++i) {
                out[i] = gaussian();
                norm2 += out[i] * out[i];
            }
        } while (norm2 == 0.0);
        const double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < dim; ++i) out[i] *= inv;
    }

    static std::array<std::uint32_t, 4> generate(
        const std::array<std::uint32_t, 4>& counter,
        const std::array<std::uint32_t, 2>& key);

  private:
    void advance() {
        if (++base_[0] == 0)
            if (++base_[1] == 0)
                if (++base_[2] == 0) ++base_[3];
    }

    std::array<std::uint32_t, 4> base_{};
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> block_{};
    int idx_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace lel
