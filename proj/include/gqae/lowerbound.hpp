#pragma once

// Moment quadratic forms and the generalized eigenvalue r(y).
//
// For real a_0..a_L, P(cos^2(theta/2)) = |sum_k a_k e^{ik theta}|^2 is a
// nonnegative polynomial of degree <= L in x, and
//
//   int_0^1 P(x) (x - 1/2)^n dx = a^T Q_n a,   (Q_n)_{kl} = q^{(n)}_{|k-l|}.
//
// r(y) is the smallest value of int P (x-y)^2 / int P over such P, i.e. the
// smallest generalized eigenvalue of (Q(y), Q_0).

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gqae/errors.hpp"

namespace gqae {

/// First-row entry q^{(n)}_k of the order-n moment form.
inline double moment_form_entry(int n, std::size_t k) {
    const double kk = double(k) * double(k);
    switch (n) {
        case 0: return (k % 2 == 0) ? 1.0 / (1.0 - kk) : 0.0;
        case 1: return (k % 2 == 1) ? 1.0 / (2.0 * (4.0 - kk)) : 0.0;
        case 2: return (k % 2 == 0) ? (3.0 - kk) / (4.0 * (1.0 - kk) * (9.0 - kk)) : 0.0;
        default: throw invalid_input("moment form order must be 0, 1 or 2");
    }
}

/// Symmetric Toeplitz (L+1)x(L+1) matrix of an order-n moment form.
struct MomentForm {
    int order = 0;
    Eigen::MatrixXd entries;

    Eigen::Index size() const noexcept { return entries.rows(); }
};

inline MomentForm q_matrix(int n, std::size_t L) {
    const auto dim = static_cast<Eigen::Index>(L + 1);
    std::vector<double> row(L + 1);
    for (std::size_t k = 0; k <= L; ++k) row[k] = moment_form_entry(n, k);
    MomentForm form{n, Eigen::MatrixXd(dim, dim)};
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) form.entries(i, j) = row[static_cast<std::size_t>(std::abs(i - j))];
    return form;
}

/// Q(y) = Q_2 - 2 (y - 1/2) Q_1 + (y - 1/2)^2 Q_0.
inline Eigen::MatrixXd q_of_y(double y, std::size_t L) {
    const double d = y - 0.5;
    return q_matrix(2, L).entries - 2.0 * d * q_matrix(1, L).entries + d * d * q_matrix(0, L).entries;
}

/// Smallest lambda with A v = lambda B v for symmetric A and symmetric
/// positive definite B, via B = C C^T and the standard problem C^{-1} A C^{-T}.
///
/// Throws conditioning_error carrying the failing pivot when B is not
/// numerically positive definite.
inline double min_generalized_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw invalid_input("generalized eigenproblem needs square matrices of equal size");
    const Eigen::Index n = B.rows();
    if (n == 0) throw invalid_input("empty generalized eigenproblem");

    Eigen::LLT<Eigen::MatrixXd> llt(B);
    const Eigen::MatrixXd C = llt.matrixL();
    if (llt.info() != Eigen::Success || !C.allFinite()) {
        // Eigen does not report the pivot; find it with an explicit pass.
        Eigen::MatrixXd work = B;
        Eigen::Index pivot = 0;
        for (; pivot < n; ++pivot) {
            const double d = work(pivot, pivot) - work.row(pivot).head(pivot).squaredNorm();
            if (!(d > 0.0)) break;
            work(pivot, pivot) = std::sqrt(d);
            for (Eigen::Index i = pivot + 1; i < n; ++i)
                work(i, pivot) = (work(i, pivot) - work.row(i).head(pivot).dot(work.row(pivot).head(pivot))) /
                                 work(pivot, pivot);
        }
        throw conditioning_error("Cholesky factorization failed at pivot " + std::to_string(pivot), pivot);
    }
    // Relative pivot guard: a tiny positive pivot is as bad as a negative one.
    const double scale = B.diagonal().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i)
        if (C(i, i) * C(i, i) <= 1e-15 * scale)
            throw conditioning_error("Cholesky pivot " + std::to_string(i) + " is numerically zero", i, C(i, i));

    // M = C^{-1} A C^{-T}
    Eigen::MatrixXd M = llt.matrixL().solve(A);
    M = llt.matrixL().solve(M.transpose()).transpose();
    M = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw conditioning_error("symmetric eigensolver did not converge");
    return es.eigenvalues()(0);
}

/// r(y) for polynomials of degree <= L.
inline double r_of_y(double y, std::size_t L) {
    if (!(y > 0.0 && y < 1.0)) throw invalid_input("r(y) needs y in (0,1)");
    if (L < 1) throw invalid_input("r(y) needs L >= 1");
    return std::max(0.0, min_generalized_eigenvalue(q_of_y(y, L), q_matrix(0, L).entries));
}

/// Rayleigh quotient a^T A a / a^T B a.
inline double rayleigh_quotient(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::VectorXd& a) {
    return a.dot(A * a) / a.dot(B * a);
}

/// Independent estimate of r(y): projected gradient descent of the Rayleigh
/// quotient on the unit sphere from `restarts` random starts.
///
/// Uses only matrix-vector products; always an upper bound on r(y).
inline double brute_force_r(double y, std::size_t L, int restarts = 64, std::uint64_t seed = 0,
                            int max_iterations = 20000) {
    if (L > 8) throw invalid_input("brute_force_r is an oracle for L <= 8");
    const Eigen::MatrixXd A = q_of_y(y, L);
    const Eigen::MatrixXd B = q_matrix(0, L).entries;
    const auto dim = static_cast<Eigen::Index>(L + 1);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = std::numeric_limits<double>::infinity();

    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd a(dim);
        for (Eigen::Index i = 0; i < dim; ++i) a(i) = gauss(rng);
        a.normalize();
        double rho = rayleigh_quotient(A, B, a);
        double step = 1.0;
        for (int it = 0; it < max_iterations; ++it) {
            const double den = a.dot(B * a);
            Eigen::VectorXd g = 2.0 * (A * a - rho * (B * a)) / den;
            g -= g.dot(a) * a;  // tangent to the sphere
            const double gn = g.norm();
            if (gn < 1e-13) break;
            // Armijo backtracking along the projected gradient
            bool moved = false;
            for (int bt = 0; bt < 60; ++bt) {
                Eigen::VectorXd trial = (a - step * g).normalized();
                const double rt = rayleigh_quotient(A, B, trial);
                if (rt <= rho - 1e-4 * step * gn * gn) {
                    a = trial;
                    rho = rt;
                    step *= 2.0;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        best = std::min(best, rho);
    }
    return best;
}

/// One row of the r(y) sweep. `status` is empty on success and carries the
/// failure description otherwise (r and scaled are NaN then).
struct RyRow {
    std::size_t L = 0;
    double y = 0.0;
    double r = 0.0;
    double scaled = 0.0;
    std::string status;

    bool ok() const noexcept { return status.empty(); }
};

struct RyTable {
    std::vector<RyRow> rows;

    bool all_ok() const {
        return std::all_of(rows.begin(), rows.end(), [](const RyRow& r) { return r.ok(); });
    }
};

/// L^2 r / (pi^2 y (1-y)); tends to 1 as L grows.
inline double scaled_r(double r, double y, std::size_t L) {
    return double(L) * double(L) * r / (std::numbers::pi * std::numbers::pi * y * (1.0 - y));
}

/// r(y) over the product of `Ls` and `ys`, rows sorted by (L, y). A
/// conditioning failure is recorded in its row rather than thrown.
inline RyTable sweep_ry(std::vector<std::size_t> Ls, std::vector<double> ys) {
    for (double y : ys)
        if (!(y > 0.0 && y < 1.0)) throw invalid_input("sweep y values must lie in (0,1)");
    std::sort(Ls.begin(), Ls.end());
    std::sort(ys.begin(), ys.end());
    RyTable table;
    table.rows.reserve(Ls.size() * ys.size());
    for (std::size_t L : Ls) {
        for (double y : ys) {
            RyRow row{L, y, 0.0, 0.0, {}};
            try {
                row.r = r_of_y(y, L);
                row.scaled = scaled_r(row.r, y, L);
            } catch (const conditioning_error& e) {
                row.r = row.scaled = std::numeric_limits<double>::quiet_NaN();
                row.status = e.what();
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace gqae
