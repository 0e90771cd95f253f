#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "gqae/errors.hpp"

namespace gqae {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [0,1]; exact for degree <= 2n-1.
inline QuadratureRule gauss_legendre(std::size_t n) {
    if (n == 0) throw invalid_input("Gauss-Legendre rule needs at least one node");
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * double(k) - 1.0) * z * p1 - (double(k) - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            dp = double(n) * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = z;
        for (std::size_t k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * double(k) - 1.0) * z * p1 - (double(k) - 1.0) * p0) / double(k);
            p0 = p1;
            p1 = p2;
        }
        dp = double(n) * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = 0.5 * (1.0 - z);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

/// n closed Chebyshev (Lobatto) nodes on [0,1], including both endpoints,
/// in increasing order. n = 1 gives the midpoint.
inline std::vector<double> chebyshev_nodes_01(std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {0.5};
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * double(i) / double(n - 1)));
    x.front() = 0.0;
    x.back() = 1.0;
    return x;
}

}  // namespace gqae
