#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "gqae/errors.hpp"

namespace gqae {

namespace detail {

// Parlett-Reinsch balancing by powers of two, applied to the off-diagonal
// part of a companion matrix.
inline void balance(Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    constexpr double gamma = 0.95;
    bool changed = true;
    for (int sweep = 0; changed && sweep < 100; ++sweep) {
        changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            double row = 0.0, col = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                row += std::abs(m(i, j));
                col += std::abs(m(j, i));
            }
            if (row == 0.0 || col == 0.0) continue;
            int e = 0;
            std::frexp(row / col, &e);
            e /= 2;
            if (e == 0) continue;
            const double f = std::ldexp(1.0, e);
            if (col * f + row / f < gamma * (col + row)) {
                changed = true;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }
}

}  // namespace detail

/// All complex roots of sum_i coeffs[i] z^i by eigenvalues of the balanced
/// companion matrix. The leading coefficient must be nonzero.
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    if (coeffs.empty() || coeffs.back() == 0.0) throw invalid_input("polynomial_roots needs a nonzero leading coefficient");
    const auto n = static_cast<Eigen::Index>(coeffs.size() - 1);
    if (n == 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    if (n > 1) companion.diagonal(-1).setOnes();
    for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
    detail::balance(companion);
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    if (es.info() != Eigen::Success) throw conditioning_error("companion eigenvalue iteration did not converge");
    std::vector<std::complex<double>> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return roots;
}

}  // namespace gqae
