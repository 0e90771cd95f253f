#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "gqae/lowerbound.hpp"

using namespace gqae;

namespace {

// int_0^1 (x - 1/2)^n T_k(2x - 1) dx by adaptive Gauss-Kronrod.
double moment_by_quadrature(int n, std::size_t k) {
    auto f = [&](double x) {
        const double u = 2.0 * x - 1.0;
        double t0 = 1.0, t1 = u;
        for (std::size_t j = 1; j < k; ++j) {
            const double t2 = 2.0 * u * t1 - t0;
            t0 = t1;
            t1 = t2;
        }
        return std::pow(x - 0.5, n) * (k == 0 ? t0 : t1);
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-12);
}

double closed_form_l1(double y) {
    const double d = y - 0.5;
    return 1.0 / 12.0 + d * d - std::abs(d) / 3.0;
}

}  // namespace

TEST(QMatrix, Entries) {
    EXPECT_DOUBLE_EQ(q_matrix(0, 4).entries(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(q_matrix(0, 4).entries(0, 2), -1.0 / 3.0);
    EXPECT_DOUBLE_EQ(q_matrix(1, 4).entries(0, 1), 1.0 / 6.0);
    EXPECT_DOUBLE_EQ(q_matrix(2, 4).entries(0, 0), 1.0 / 12.0);
    EXPECT_DOUBLE_EQ(q_matrix(0, 4).entries(1, 2), 0.0);
}

TEST(QMatrix, SymmetricToeplitz) {
    for (int n = 0; n <= 2; ++n) {
        const auto Q = q_matrix(n, 9).entries;
        ASSERT_EQ(Q.rows(), 10);
        for (Eigen::Index i = 0; i < 10; ++i)
            for (Eigen::Index j = 0; j < 10; ++j) {
                EXPECT_EQ(Q(i, j), Q(j, i));
                if (i > 0 && j > 0) EXPECT_EQ(Q(i, j), Q(i - 1, j - 1));
            }
    }
}

TEST(QMatrix, MatchesAdaptiveQuadrature) {
    for (int n = 0; n <= 2; ++n)
        for (std::size_t k = 0; k <= 16; ++k)
            EXPECT_NEAR(moment_form_entry(n, k), moment_by_quadrature(n, k), 1e-10) << n << "," << k;
}

TEST(QMatrix, InvalidOrderThrows) {
    EXPECT_THROW(q_matrix(3, 2), invalid_input);
}

TEST(QOfY, MidpointIsSecondMoment) {
    EXPECT_TRUE(q_of_y(0.5, 7).isApprox(q_matrix(2, 7).entries));
}

TEST(QOfY, TwoByTwoClosedForm) {
    const double y = 0.2, d = y - 0.5;
    const auto Q = q_of_y(y, 1);
    EXPECT_NEAR(Q(0, 0), 1.0 / 12.0 + d * d, 1e-15);
    EXPECT_NEAR(Q(1, 1), 1.0 / 12.0 + d * d, 1e-15);
    EXPECT_NEAR(Q(0, 1), -d / 3.0, 1e-15);
}

TEST(QOfY, PositiveSemidefinite) {
    for (double y : {0.05, 0.3, 0.5, 0.91}) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q_of_y(y, 12));
        EXPECT_GE(es.eigenvalues()(0), -1e-14) << y;
    }
}

TEST(GeneralizedEigen, Trivial) {
    EXPECT_NEAR(min_generalized_eigenvalue(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()), 1.0, 1e-15);
    Eigen::Matrix2d A = Eigen::Vector2d(3.0, 5.0).asDiagonal();
    EXPECT_NEAR(min_generalized_eigenvalue(A, Eigen::Matrix2d::Identity()), 3.0, 1e-15);
    EXPECT_NEAR(min_generalized_eigenvalue(q_of_y(0.5, 1), q_matrix(0, 1).entries), 1.0 / 12.0, 1e-15);
}

TEST(GeneralizedEigen, IndefiniteRightHandSideReportsPivot) {
    Eigen::Matrix3d B;
    B << 1, 0, 0, 0, 1, 2, 0, 2, 1;
    try {
        min_generalized_eigenvalue(Eigen::Matrix3d::Identity(), B);
        FAIL() << "expected conditioning_error";
    } catch (const conditioning_error& e) {
        EXPECT_EQ(e.index(), 2);
    }
}

TEST(RofY, ClosedFormAtLOne) {
    EXPECT_NEAR(r_of_y(0.5, 1), 1.0 / 12.0, 1e-15);
    EXPECT_NEAR(r_of_y(1.0 / 3.0, 1), 1.0 / 18.0, 1e-14);
    for (int i = 0; i <= 20; ++i) {
        const double y = 0.025 + 0.95 * i / 20.0;
        EXPECT_NEAR(r_of_y(y, 1), closed_form_l1(y), 1e-12) << y;
    }
}

TEST(RofY, Domain) {
    EXPECT_THROW(r_of_y(0.0, 3), invalid_input);
    EXPECT_THROW(r_of_y(1.0, 3), invalid_input);
    EXPECT_THROW(r_of_y(0.5, 0), invalid_input);
}

TEST(RofY, NonincreasingInL) {
    for (double y : {0.2, 0.5, 0.8}) {
        double prev = r_of_y(y, 1);
        for (std::size_t L = 2; L <= 40; ++L) {
            const double r = r_of_y(y, L);
            EXPECT_LE(r, prev + 1e-15) << y << " " << L;
            prev = r;
        }
    }
}

TEST(RofY, MirrorSymmetric) {
    for (double y : {0.1, 0.27, 0.4})
        for (std::size_t L : {1u, 5u, 20u}) EXPECT_NEAR(r_of_y(y, L), r_of_y(1.0 - y, L), 1e-13);
}

TEST(RofY, ScaledApproachesOneFromBelow) {
    double prev = 0.0;
    for (std::size_t L : {8u, 16u, 32u, 64u, 128u, 256u}) {
        const double s = scaled_r(r_of_y(0.5, L), 0.5, L);
        EXPECT_GT(s, prev) << L;
        EXPECT_LT(s, 1.0 + 1e-9) << L;
        prev = s;
    }
}

TEST(RofY, AttainedByAPolynomial) {
    // The Rayleigh quotient of any coefficient vector is at least r(y).
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    const std::size_t L = 6;
    const double y = 0.37, r = r_of_y(y, L);
    for (int t = 0; t < 200; ++t) {
        Eigen::VectorXd a(L + 1);
        for (Eigen::Index i = 0; i <= Eigen::Index(L); ++i) a(i) = g(rng);
        EXPECT_GE(rayleigh_quotient(q_of_y(y, L), q_matrix(0, L).entries, a), r - 1e-14);
    }
}

TEST(BruteForce, MatchesEigenvalue) {
    EXPECT_NEAR(brute_force_r(0.5, 1), 1.0 / 12.0, 1e-8);
    EXPECT_NEAR(brute_force_r(0.5, 2), r_of_y(0.5, 2), 1e-6);
    for (double y : {0.3, 0.7})
        for (std::size_t L = 1; L <= 4; ++L) {
            const double bf = brute_force_r(y, L, 16, 1), r = r_of_y(y, L);
            EXPECT_NEAR(bf, r, 1e-6);
            EXPECT_GE(bf, r - 1e-9);
        }
}

TEST(BruteForce, RejectsLargeL) {
    EXPECT_THROW(brute_force_r(0.5, 9), invalid_input);
}

TEST(Sweep, SingleRow) {
    const auto t = sweep_ry({1}, {0.5});
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_NEAR(t.rows[0].r, 1.0 / 12.0, 1e-15);
    EXPECT_NEAR(t.rows[0].scaled, (1.0 / 12.0) / (std::numbers::pi * std::numbers::pi / 4.0), 1e-15);
    EXPECT_NEAR(t.rows[0].scaled, 0.03377, 1e-5);
}

TEST(Sweep, RowsOrderedAndBounded) {
    const auto t = sweep_ry({16, 4}, {0.9, 0.1, 0.5});
    ASSERT_EQ(t.rows.size(), 6u);
    EXPECT_TRUE(t.all_ok());
    EXPECT_EQ(t.rows[0].L, 4u);
    EXPECT_EQ(t.rows[0].y, 0.1);
    EXPECT_EQ(t.rows[5].L, 16u);
    EXPECT_EQ(t.rows[5].y, 0.9);
    for (const auto& r : t.rows) {
        EXPECT_GE(r.r, 0.0);
        EXPECT_LE(r.scaled, 1.0 + 1e-9);
    }
}

TEST(Sweep, RejectsBoundaryY) {
    EXPECT_THROW(sweep_ry({1}, {0.0}), invalid_input);
}
