#pragma once

#include <cstddef>
#include <vector>

namespace hardy {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point rule, nodes ascending. Newton iteration on P_n from the Chebyshev guess.
GaussLegendreRule gauss_legendre(std::size_t n);

/// Cached rule; the cache is filled once per order and never mutated afterwards.
const GaussLegendreRule& gauss_legendre_cached(std::size_t n);

}  // namespace hardy
