#pragma once

// Dense statevector simulation of the generalized qubitization circuit in the
// two-dimensional W(theta) model. The state has 2N amplitudes indexed by a
// system bit s and an ancilla index k. Both projector-controlled gates use
// Pi = |0><0| on the system bit, since |psi_0> = |0> and W|0> has its "good"
// component along |0>.

#include <Eigen/Dense>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "gqae/errors.hpp"
#include "gqae/polynomials.hpp"
#include "gqae/quadrature.hpp"
#include "gqae/sineqpe.hpp"
#include "gqae/synthesis.hpp"

namespace gqae {

/// W(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]];
/// its transpose when `inverse`.
inline Eigen::Matrix2d w_matrix(double theta, bool inverse = false) {
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    Eigen::Matrix2d w;
    w << c, -s, s, c;
    return inverse ? Eigen::Matrix2d(w.transpose()) : w;
}

/// theta with x = cos^2(theta/2), theta in [0, pi].
inline double theta_of_x(double x) {
    return 2.0 * std::acos(std::sqrt(std::clamp(x, 0.0, 1.0)));
}

struct WModelState {
    Eigen::VectorXcd good;  // s = 0
    Eigen::VectorXcd bad;   // s = 1

    double norm_squared() const { return good.squaredNorm() + bad.squaredNorm(); }
};

/// Runs the circuit and returns the final state. W is queried on odd steps,
/// W^{-1} on even steps, each followed by the Pi-controlled U_j.
inline WModelState run_circuit_state(const GQCircuit& circ, double theta) {
    if (circ.unitaries.size() != circ.L + 1) throw invalid_input("circuit must hold L+1 unitaries");
    const auto n = static_cast<Eigen::Index>(circ.N);
    WModelState st{circ.unitaries[0].col(0), Eigen::VectorXcd::Zero(n)};
    const Eigen::Matrix2d w = w_matrix(theta, false);
    const Eigen::Matrix2d wi = w_matrix(theta, true);
    for (std::size_t j = 1; j <= circ.L; ++j) {
        const Eigen::Matrix2d& q = (j % 2 == 1) ? w : wi;
        Eigen::VectorXcd g = q(0, 0) * st.good + q(0, 1) * st.bad;
        st.bad = q(1, 0) * st.good + q(1, 1) * st.bad;
        st.good = circ.unitaries[j] * g;
    }
    return st;
}

/// Outcome distribution P(k | theta) of the ancilla measurement.
inline std::vector<double> run_circuit(const GQCircuit& circ, double theta) {
    const auto st = run_circuit_state(circ, theta);
    std::vector<double> p(circ.N);
    for (std::size_t k = 0; k < circ.N; ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        p[k] = std::norm(st.good(i)) + std::norm(st.bad(i));
    }
    return p;
}

struct VerificationRow {
    double theta = 0.0;
    double x = 0.0;
    std::size_t k = 0;
    double simulated = 0.0;
    double target = 0.0;
    double abs_error = 0.0;
};

struct VerificationReport {
    double max_error = 0.0;
    bool pass = false;
    std::size_t grid_size = 0;
    std::vector<VerificationRow> rows;
};

/// Compares simulated outcome probabilities with the target polynomials at
/// `grid_size` closed Chebyshev nodes in x. Passes iff max error <= tol.
inline VerificationReport verify_circuit(const GQCircuit& circ, const OutcomeSet& target, std::size_t grid_size = 129,
                                         double tol = 1e-8) {
    if (target.N != circ.N || target.polys.size() != circ.N) throw invalid_input("circuit and target differ in N");
    VerificationReport rep;
    rep.grid_size = grid_size;
    for (double x : chebyshev_nodes_01(grid_size)) {
        const double theta = theta_of_x(x);
        const auto dist = run_circuit(circ, theta);
        for (std::size_t k = 0; k < circ.N; ++k) {
            const double want = eval(target.polys[k], x);
            const double err = std::abs(dist[k] - want);
            rep.max_error = std::max(rep.max_error, err);
            rep.rows.push_back({theta, x, k, dist[k], want, err});
        }
    }
    rep.pass = rep.max_error <= tol;
    return rep;
}

/// Risk of the simulated circuit under the uniform prior, by Gauss-Legendre
/// quadrature in x.
inline RiskReport empirical_risk(const GQCircuit& circ, std::size_t quad_nodes) {
    if (quad_nodes < circ.L + 2) throw invalid_input("empirical_risk needs at least L+2 quadrature nodes");
    const auto rule = gauss_legendre(quad_nodes);
    std::vector<std::vector<double>> dist;
    dist.reserve(quad_nodes);
    for (double x : rule.nodes) dist.push_back(run_circuit(circ, theta_of_x(x)));

    RiskReport rep;
    rep.N = circ.N;
    double var = 0.0;
    for (std::size_t k = 0; k < circ.N; ++k) {
        double w0 = 0.0, w1 = 0.0;
        for (std::size_t i = 0; i < quad_nodes; ++i) {
            w0 += rule.weights[i] * dist[i][k];
            w1 += rule.weights[i] * dist[i][k] * rule.nodes[i];
        }
        const bool live = w0 > unreachable_weight;
        const double est = live ? w1 / w0 : 0.5;
        rep.estimates.push_back(est);
        rep.weights.push_back(live ? w0 : 0.0);
        rep.reachable.push_back(live);
        if (!live) continue;
        for (std::size_t i = 0; i < quad_nodes; ++i) {
            const double d = rule.nodes[i] - est;
            var += rule.weights[i] * dist[i][k] * d * d;
        }
    }
    rep.dx = std::sqrt(std::max(var, 0.0));
    rep.ratio = risk_ratio(rep.dx, circ.N);
    return rep;
}

/// Haar-random N x N unitary from the QR factorization of a complex Gaussian.
inline UnitaryMatrix random_unitary(std::size_t N, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(N);
    Eigen::MatrixXcd z(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) z(i, j) = {gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

inline GQCircuit random_circuit(std::size_t N, std::size_t L, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GQCircuit circ{N, L, {}};
    for (std::size_t j = 0; j <= L; ++j) circ.unitaries.push_back(random_unitary(N, rng));
    return circ;
}

struct FitCheck {
    double residual = 0.0;            // degree-L least-squares fit
    double residual_lower = 0.0;      // degree-(L-1) fit; 0 when L = 0
};

namespace detail {

inline double chebyshev_fit_residual(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t degree) {
    const auto rows = static_cast<Eigen::Index>(xs.size());
    const auto cols = static_cast<Eigen::Index>(degree + 1);
    Eigen::MatrixXd V(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index m = 0; m < cols; ++m)
            V(i, m) = std::cos(double(m) * std::acos(std::clamp(2.0 * xs[static_cast<std::size_t>(i)] - 1.0, -1.0, 1.0)));
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), rows);
    const Eigen::VectorXd coef = V.colPivHouseholderQr().solve(y);
    return (V * coef - y).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Builds a circuit from seeded random unitaries, samples P(k|x) at 2L+3
/// Chebyshev nodes and returns the worst least-squares residual of a
/// degree-L (and degree-(L-1)) polynomial fit over all k.
inline FitCheck polynomial_fit_check(std::size_t N, std::size_t L, std::uint64_t seed) {
    if (N == 0 || N > 8 || L > 12) throw invalid_input("polynomial_fit_check is sized for N <= 8, L <= 12");
    const auto circ = random_circuit(N, L, seed);
    const auto xs = chebyshev_nodes_01(2 * L + 3);
    std::vector<std::vector<double>> ys(N);
    for (double x : xs) {
        const auto p = run_circuit(circ, theta_of_x(x));
        for (std::size_t k = 0; k < N; ++k) ys[k].push_back(p[k]);
    }
    FitCheck out;
    for (std::size_t k = 0; k < N; ++k) {
        out.residual = std::max(out.residual, detail::chebyshev_fit_residual(xs, ys[k], L));
        if (L > 0) out.residual_lower = std::max(out.residual_lower, detail::chebyshev_fit_residual(xs, ys[k], L - 1));
    }
    return out;
}

}  // namespace gqae
