#pragma once

#include <memory>
#include <random>
#include <vector>

#include "gqae/simulator.hpp"
#include "gqae/synthesis.hpp"

namespace gqae::testing {

/// A mapper that post-composes the default choice with a seeded random
/// unitary fixing b, so U'^dagger a = b still holds.
inline UnitaryMapper randomized_mapper(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) -> UnitaryMatrix {
        const UnitaryMatrix U = unitary_mapping(a, b);
        const auto n = a.size();
        if (b.norm() <= 1e-12) return U * random_unitary(static_cast<std::size_t>(n), *rng);
        Eigen::MatrixXcd first = b / b.norm();
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(first);
        Eigen::MatrixXcd Q = qr.householderQ();
        Q.col(0) = b / b.norm();  // Q is unitary with first column b/|b|
        UnitaryMatrix D = UnitaryMatrix::Identity(n, n);
        if (n > 1) D.bottomRightCorner(n - 1, n - 1) = random_unitary(static_cast<std::size_t>(n - 1), *rng);
        const UnitaryMatrix W = Q * D * Q.adjoint();  // W b = b
        return U * W.adjoint();
    };
}

/// R with R(cos^2(theta/2)) = |sum_k a_k e^{ik theta}|^2, from the
/// autocorrelation of a.
inline Poly poly_from_circle(const std::vector<double>& a) {
    std::vector<double> r(a.size(), 0.0);
    for (std::size_t m = 0; m < a.size(); ++m) {
        for (std::size_t l = 0; l + m < a.size(); ++l) r[m] += a[l] * a[l + m];
        if (m) r[m] *= 2.0;
    }
    return Poly(Basis::shifted_chebyshev_x, std::move(r));
}

}  // namespace gqae::testing
