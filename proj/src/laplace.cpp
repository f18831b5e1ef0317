#include "laplace.hpp"

#include <cmath>

#include "common.hpp"

namespace lel {

std::vector<double> gaver_stehfest_weights(int n) {
    if (n < 2 || n % 2 != 0) throw_invalid("gaver_stehfest_weights: n must be even");
    const int half = n / 2;
    auto lfact = [](int m) { return std::lgamma(static_cast<long double>(m) + 1.0L); };
    std::vector<double> w(n);
    for (int k = 1; k <= n; ++k) {
        long double sum = 0.0L;
        const int j_lo = (k + 1) / 2;
        const int j_hi = std::min(k, half);
        for (int j = j_lo; j <= j_hi; ++j) {
            // j^{half+1}/half! * C(half,j) * C(2j,j) * C(j,k-j)
            long double lt = (half + 1) * std::log(static_cast<long double>(j)) -
                             lfact(half) + lfact(half) - lfact(j) - lfact(half - j) +
                             lfact(2 * j) - 2.0L * lfact(j) + lfact(j) -
                             lfact(k - j) - lfact(2 * j - k);
            sum += std::exp(lt);
        }
        w[k - 1] = static_cast<double>(((half + k) % 2 == 0 ? 1.0L : -1.0L) * sum);
    }
    return w;
}

double gaver_stehfest(const Fn1& transform, double t,
                      const std::vector<double>& weights) {
    if (!(t > 0.0)) throw_invalid("gaver_stehfest: t must be positive");
    const double l2t = std::log(2.0) / t;
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k)
        acc += weights[k] * transform((k + 1) * l2t);
    return acc * l2t;
}

}  // namespace lel
