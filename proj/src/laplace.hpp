#pragma once

#include <vector>

#include "quadrature.hpp"

namespace lel {

// Gaver-Stehfest weights for an even number of terms n.  Practical double
// precision range is n ~ 10..16.
std::vector<double> gaver_stehfest_weights(int n);

// Inverts a Laplace transform at t > 0:
//   f(t) ~ (ln 2 / t) sum_k w[k] F((k+1) ln 2 / t).
double gaver_stehfest(const Fn1& transform, double t,
                      const std::vector<double>& weights);

}  // namespace lel
