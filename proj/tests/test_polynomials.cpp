#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gqae/polynomials.hpp"
#include "gqae/quadrature.hpp"

using namespace gqae;

namespace {

std::vector<double> random_coeffs(std::size_t degree, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(degree + 1);
    for (auto& v : c) v = u(rng);
    return c;
}

double max_rel_gap(const Poly& p, const Poly& q) {
    double gap = 0.0;
    const std::size_t n = std::max(p.size(), q.size());
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(p[i] - q[i]));
    return gap / std::max(1.0, p.max_abs_coeff());
}

}  // namespace

TEST(Eval, ChebyshevT3AtHalf) {
    EXPECT_NEAR(eval(Poly::unit(Basis::chebyshev_c, 3), 0.5), -1.0, 1e-15);
}

TEST(Eval, MonomialHorner) {
    EXPECT_DOUBLE_EQ(eval(Poly(Basis::monomial_x, {1.0, 2.0, 3.0}), 2.0), 17.0);
}

TEST(Eval, ChebyshevIsCosineOfMultipleAngle) {
    EXPECT_NEAR(eval(Poly::unit(Basis::chebyshev_c, 5), std::cos(0.3)), std::cos(1.5), 1e-14);
    for (std::size_t m = 0; m <= 40; ++m)
        EXPECT_NEAR(eval(Poly::unit(Basis::chebyshev_c, m), std::cos(0.7)), std::cos(0.7 * double(m)), 1e-13) << m;
}

TEST(Eval, ShiftedBasisUsesTwoXMinusOne) {
    const double x = 0.3;
    EXPECT_NEAR(eval(Poly::unit(Basis::shifted_chebyshev_x, 4), x), std::cos(4.0 * std::acos(2 * x - 1)), 1e-14);
}

TEST(Convert, ShiftedT2ToMonomial) {
    const auto p = convert(Poly::unit(Basis::shifted_chebyshev_x, 2), Basis::monomial_x);
    ASSERT_EQ(p.size(), 3u);
    EXPECT_NEAR(p[0], 1.0, 1e-15);
    EXPECT_NEAR(p[1], -8.0, 1e-15);
    EXPECT_NEAR(p[2], 8.0, 1e-15);
}

TEST(Convert, ConstantIsBasisFree) {
    for (Basis from : {Basis::monomial_x, Basis::shifted_chebyshev_x})
        for (Basis to : {Basis::monomial_x, Basis::shifted_chebyshev_x}) {
            const auto p = convert(Poly::constant(from, 1.0), to);
            EXPECT_EQ(p.trimmed().coeffs(), std::vector<double>{1.0});
        }
    for (Basis from : {Basis::monomial_c, Basis::chebyshev_c})
        for (Basis to : {Basis::monomial_c, Basis::chebyshev_c})
            EXPECT_EQ(convert(Poly::constant(from, 1.0), to).trimmed().coeffs(), std::vector<double>{1.0});
}

TEST(Convert, CIsT1) {
    const auto p = convert(Poly(Basis::monomial_c, {0.0, 1.0}), Basis::chebyshev_c);
    EXPECT_EQ(p.coeffs(), (std::vector<double>{0.0, 1.0}));
}

TEST(Convert, AcrossVariablesIsRejected) {
    EXPECT_THROW(convert(Poly(Basis::monomial_x, {1.0}), Basis::chebyshev_c), basis_error);
    EXPECT_THROW(convert(Poly(Basis::chebyshev_c, {1.0}), Basis::shifted_chebyshev_x), basis_error);
}

// Round trips starting from the monomial side stay well conditioned far
// longer than those starting from Chebyshev coefficients, whose monomial
// images grow geometrically with the degree.
TEST(Convert, RoundTripFromMonomial) {
    std::mt19937_64 rng(11);
    for (std::size_t d : {0u, 1u, 5u, 16u, 32u}) {
        const Poly p(Basis::monomial_c, random_coeffs(d, rng));
        EXPECT_LE(max_rel_gap(p, convert(convert(p, Basis::chebyshev_c), Basis::monomial_c)), 1e-10) << d;
    }
    for (std::size_t d : {0u, 1u, 5u, 16u}) {
        const Poly p(Basis::monomial_x, random_coeffs(d, rng));
        EXPECT_LE(max_rel_gap(p, convert(convert(p, Basis::shifted_chebyshev_x), Basis::monomial_x)), 1e-10) << d;
    }
}

TEST(Convert, RoundTripFromChebyshev) {
    std::mt19937_64 rng(12);
    for (std::size_t d : {0u, 1u, 5u, 12u, 16u}) {
        const Poly p(Basis::chebyshev_c, random_coeffs(d, rng));
        EXPECT_LE(max_rel_gap(p, convert(convert(p, Basis::monomial_c), Basis::chebyshev_c)), 1e-10) << d;
    }
    for (std::size_t d : {0u, 1u, 5u, 8u}) {
        const Poly p(Basis::shifted_chebyshev_x, random_coeffs(d, rng));
        EXPECT_LE(max_rel_gap(p, convert(convert(p, Basis::monomial_x), Basis::shifted_chebyshev_x)), 1e-10) << d;
    }
}

TEST(Convert, ClenshawMatchesMonomialEvaluation) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t d : {3u, 7u, 10u}) {
        const Poly p(Basis::chebyshev_c, random_coeffs(d, rng));
        const Poly m = convert(p, Basis::monomial_c);
        for (int i = 0; i < 100; ++i) {
            const double c = u(rng);
            EXPECT_NEAR(eval(p, c), eval(m, c), 1e-11);
        }
    }
}

TEST(MulByC, Examples) {
    EXPECT_EQ(mul_by_c(Poly(Basis::chebyshev_c, {1.0})).coeffs(), (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(mul_by_c(Poly::unit(Basis::chebyshev_c, 1)).coeffs(), (std::vector<double>{0.5, 0.0, 0.5}));
    EXPECT_EQ(mul_by_c(Poly::unit(Basis::chebyshev_c, 2)).coeffs(), (std::vector<double>{0.0, 0.5, 0.0, 0.5}));
}

TEST(MulByC, AgreesWithMonomialShift) {
    std::mt19937_64 rng(14);
    for (std::size_t d : {0u, 4u, 9u}) {
        const Poly p(Basis::chebyshev_c, random_coeffs(d, rng));
        const Poly via_cheb = convert(mul_by_c(p), Basis::monomial_c);
        const Poly via_mono = mul_by_c(convert(p, Basis::monomial_c));
        EXPECT_LE(max_rel_gap(via_mono, via_cheb), 1e-12) << d;
    }
}

TEST(MulByC, RejectsXBasis) {
    EXPECT_THROW(mul_by_c(Poly(Basis::shifted_chebyshev_x, {1.0})), basis_error);
}

TEST(MulByX, ShiftedRuleMatchesValues) {
    std::mt19937_64 rng(15);
    const Poly p(Basis::shifted_chebyshev_x, random_coeffs(30, rng));
    const Poly q = mul_by_x(p);
    for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) EXPECT_NEAR(eval(q, x), x * eval(p, x), 1e-12);
}

TEST(Arithmetic, Examples) {
    const Poly a(Basis::monomial_x, {1.0, 1.0}), b(Basis::monomial_x, {1.0, -1.0});
    EXPECT_EQ((a + b).coeffs(), (std::vector<double>{2.0, 0.0}));
    EXPECT_EQ((a - b).coeffs(), (std::vector<double>{0.0, 2.0}));
    const Poly x(Basis::monomial_x, {0.0, 1.0});
    EXPECT_EQ((x * x).coeffs(), (std::vector<double>{0.0, 0.0, 1.0}));
    EXPECT_EQ((Poly(Basis::monomial_x, {1.0, 2.0}) * 0.5).coeffs(), (std::vector<double>{0.5, 1.0}));
}

TEST(Arithmetic, BasisMismatchThrows) {
    const Poly a(Basis::monomial_x, {1.0}), b(Basis::shifted_chebyshev_x, {1.0});
    EXPECT_THROW(a + b, basis_error);
    EXPECT_THROW(a * b, basis_error);
}

TEST(Arithmetic, ChebyshevProductMatchesValues) {
    std::mt19937_64 rng(16);
    const Poly p(Basis::chebyshev_c, random_coeffs(20, rng)), q(Basis::chebyshev_c, random_coeffs(17, rng));
    const Poly pq = p * q;
    for (double c : {-1.0, -0.4, 0.2, 0.9}) EXPECT_NEAR(eval(pq, c), eval(p, c) * eval(q, c), 1e-12);
}

TEST(Arithmetic, NonFiniteCoefficientRejected) {
    EXPECT_THROW(Poly(Basis::monomial_x, {1.0, std::nan("")}), invalid_input);
}

TEST(Trim, DropsOnlyOnRequest) {
    const Poly p(Basis::monomial_x, {1.0, 2.0, 1e-14, 0.0});
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(p.trimmed().size(), 2u);
    EXPECT_EQ(p.trimmed(0.0).size(), 3u);
}

TEST(Moments, Examples) {
    EXPECT_NEAR(moment_integral(Poly(Basis::monomial_x, {1.0}), 2, 0.5), 1.0 / 12.0, 1e-15);
    EXPECT_NEAR(moment_integral(Poly(Basis::monomial_x, {0.0, 1.0}), 0), 0.5, 1e-15);
    EXPECT_NEAR(moment_integral(Poly(Basis::monomial_x, {0.0, 1.0}), 2, 2.0 / 3.0), 1.0 / 36.0, 1e-15);
}

TEST(Moments, InvalidOrderThrows) {
    EXPECT_THROW(moment_integral(Poly(Basis::monomial_x, {1.0}), 3), invalid_input);
}

TEST(Moments, AgreeWithGaussLegendre) {
    const auto rule = gauss_legendre(128);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uy(0.0, 1.0);
    for (std::size_t d : {0u, 1u, 7u, 24u, 64u}) {
        const Poly p(Basis::shifted_chebyshev_x, random_coeffs(d, rng));
        const double y = uy(rng);
        for (int n = 0; n <= 2; ++n) {
            double q = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                q += rule.weights[i] * eval(p, rule.nodes[i]) * std::pow(rule.nodes[i] - y, n);
            EXPECT_NEAR(moment_integral(p, n, y), q, 1e-12) << "d=" << d << " n=" << n;
        }
    }
}

TEST(Quadrature, GaussLegendreIsExactForHighDegree) {
    const auto rule = gauss_legendre(20);
    double s = 0.0;
    for (std::size_t i = 0; i < 20; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 39);
    EXPECT_NEAR(s, 1.0 / 40.0, 1e-15);
}

TEST(Quadrature, ChebyshevNodesIncludeEndpoints) {
    const auto xs = chebyshev_nodes_01(9);
    EXPECT_EQ(xs.front(), 0.0);
    EXPECT_EQ(xs.back(), 1.0);
    EXPECT_TRUE(std::is_sorted(xs.begin(), xs.end()));
}

TEST(Square, ComposeAndBack) {
    std::mt19937_64 rng(18);
    const Poly r(Basis::shifted_chebyshev_x, random_coeffs(12, rng));
    const Poly rc = compose_with_square(r);
    for (double c : {-0.9, -0.1, 0.35, 1.0}) EXPECT_NEAR(eval(rc, c), eval(r, c * c), 1e-13);
    EXPECT_LE(max_rel_gap(r, even_part_to_x(rc)), 1e-15);
}

TEST(Parity, ChebyshevUValues) {
    for (std::size_t n = 0; n <= 12; ++n) {
        const double phi = 0.4;
        EXPECT_NEAR(eval(chebyshev_u(n), std::cos(phi)), std::sin(double(n + 1) * phi) / std::sin(phi), 1e-12) << n;
    }
}

TEST(Parity, ViolationFlagsWrongSlots) {
    auto p = make_parity_poly(to_complex(Poly(Basis::chebyshev_c, {0.0, 1.0, 0.0, 2.0})), 3);
    EXPECT_TRUE(p.valid());
    auto q = make_parity_poly(to_complex(Poly(Basis::chebyshev_c, {1e-6, 1.0})), 1);
    EXPECT_FALSE(q.valid());
    EXPECT_NEAR(q.violation(), 1e-6, 1e-20);
    auto r = make_parity_poly(to_complex(Poly(Basis::chebyshev_c, {0.0, 1.0, 0.0, 2.0})), 1);
    EXPECT_FALSE(r.valid());
}

TEST(Basis, NamesRoundTrip) {
    for (Basis b : {Basis::monomial_x, Basis::monomial_c, Basis::chebyshev_c, Basis::shifted_chebyshev_x})
        EXPECT_EQ(parse_basis(basis_name(b)), b);
    EXPECT_THROW(parse_basis("legendre"), invalid_input);
}
