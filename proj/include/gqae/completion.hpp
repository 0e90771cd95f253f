#pragma once

// Completion of nonnegative outcome polynomials.
//
// A polynomial R(x) >= 0 on [0,1] of degree <= L is written as
// R(cos^2(theta/2)) = |sum_{k=0}^{L} a_k e^{ik theta}|^2 with real a_k
// (Fejer-Riesz), and the half-angle expansion of the same sum gives
//
//   A(c) = sum_k a_k T_{|2k-L|}(c)
//   B(c) = sum_k a_k sgn(2k-L) U_{|2k-L|-1}(c)
//
// with A(c)^2 + (1-c^2) B(c)^2 = R(c^2) for c = cos(theta/2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gqae/errors.hpp"
#include "gqae/polynomials.hpp"
#include "gqae/roots.hpp"
#include "gqae/sineqpe.hpp"

namespace gqae {

struct CircleCoeffs {
    std::vector<double> a;
    /// Constant added to R before factorization to lift a rounding-level dip.
    double shift = 0.0;
    /// Max |(|sum a_k e^{ik theta}|^2 - R(cos^2(theta/2)))| on the check grid.
    double residual = 0.0;
};

struct FejerRieszOptions {
    double tol = 1e-8;
    std::size_t check_points = 512;
};

namespace detail {

inline double circle_modulus_sq(const std::vector<double>& a, double theta) {
    std::complex<double> s = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) s = s * std::polar(1.0, theta) + a[k];
    return std::norm(s);
}

// Picks one root from each reciprocal pair {rho, 1/conj(rho)}: every root
// strictly inside the band around the unit circle, plus one representative
// of each near-circle pair. Returns false when the counts do not line up.
inline bool select_roots(const std::vector<std::complex<double>>& roots, std::size_t d, double band,
                         std::vector<std::complex<double>>& out) {
    out.clear();
    std::vector<std::complex<double>> near;
    std::size_t outside = 0;
    for (const auto& r : roots) {
        const double m = std::abs(r);
        if (m < 1.0 - band)
            out.push_back(r);
        else if (m > 1.0 + band)
            ++outside;
        else
            near.push_back(r);
    }
    if (out.size() != outside || near.size() % 2 != 0) return false;
    // Circle roots have even multiplicity; rounding splits them into close
    // pairs. Pair greedily by distance and keep the projected midpoint.
    std::sort(near.begin(), near.end(), [](auto l, auto r) {
        return std::arg(l) < std::arg(r) || (std::arg(l) == std::arg(r) && std::abs(l) < std::abs(r));
    });
    std::vector<bool> used(near.size(), false);
    for (std::size_t i = 0; i < near.size(); ++i) {
        if (used[i]) continue;
        std::size_t best = near.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < near.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(near[i] - near[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best == near.size()) return false;
        used[i] = used[best] = true;
        const auto mid = near[i] + near[best];
        out.push_back(std::abs(mid) > 0.0 ? mid / std::abs(mid) : near[i] / std::abs(near[i]));
    }
    return out.size() == d;
}

}  // namespace detail

/// Real a_0..a_L with |sum a_k e^{ik theta}|^2 = R(cos^2(theta/2)).
///
/// Dips of R in [-tol, 0) are lifted by a constant, reported in `shift`.
/// Throws invalid_input when R dips below -tol or exceeds degree L,
/// and conditioning_error (carrying the worst grid index) when the
/// factorization residual exceeds tol.
inline CircleCoeffs fejer_riesz(const Poly& R, std::size_t L, const FejerRieszOptions& opt = {}) {
    if (variable_of(R.basis()) != Variable::x) throw basis_error("fejer_riesz needs a polynomial in x");
    Poly r = convert(R, Basis::shifted_chebyshev_x);
    const double rmax = r.max_abs_coeff();
    CircleCoeffs out;
    out.a.assign(L + 1, 0.0);
    if (rmax == 0.0) return out;
    if (r.effective_degree(1e-12) > L)
        throw invalid_input("polynomial degree " + std::to_string(r.effective_degree(1e-12)) + " exceeds L = " +
                            std::to_string(L));

    // Positivity on a fine grid in theta (R(cos^2(theta/2)) = sum r_m cos(m theta)).
    const std::size_t probe = std::max<std::size_t>(2048, 16 * (L + 1));
    double min_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= probe; ++i)
        min_value = std::min(min_value, eval(r, 0.5 * (1.0 + std::cos(std::numbers::pi * double(i) / double(probe)))));
    if (min_value < -opt.tol)
        throw invalid_input("polynomial is negative on [0,1] (min " + std::to_string(min_value) + ")");
    if (min_value < 0.0) {
        out.shift = -min_value;
        r += Poly::constant(r.basis(), out.shift);
    }

    const std::size_t d = r.effective_degree(1e-12);
    if (d == 0) {
        out.a[0] = std::sqrt(std::max(r[0], 0.0));
    } else {
        // q(z) = z^d sum_{m=-d}^{d} c_m z^m, c_0 = r_0, c_{+-m} = r_m / 2.
        std::vector<double> q(2 * d + 1, 0.0);
        q[d] = r[0];
        for (std::size_t m = 1; m <= d; ++m) q[d + m] = q[d - m] = 0.5 * r[m];
        auto roots = polynomial_roots(q);
        std::sort(roots.begin(), roots.end(), [](auto l, auto rr) {
            const double ml = std::abs(l), mr = std::abs(rr);
            return ml < mr || (ml == mr && std::arg(l) < std::arg(rr));
        });

        std::vector<std::complex<double>> chosen;
        bool ok = false;
        for (double band = 1e-7; band <= 1e-3 && !ok; band *= 10.0) ok = detail::select_roots(roots, d, band, chosen);
        if (!ok) throw conditioning_error("could not split the roots into reciprocal pairs");

        // Monic product of the chosen roots.
        std::vector<std::complex<double>> g{1.0};
        for (const auto& root : chosen) {
            std::vector<std::complex<double>> next(g.size() + 1, 0.0);
            for (std::size_t i = 0; i < g.size(); ++i) {
                next[i + 1] += g[i];
                next[i] -= root * g[i];
            }
            g.swap(next);
        }
        // Cosine coefficients of |g|^2 and the scale that matches r.
        std::size_t peak = 0;
        for (std::size_t m = 0; m <= d; ++m)
            if (std::abs(r[m]) > std::abs(r[peak])) peak = m;
        std::complex<double> acf = 0.0;
        for (std::size_t l = 0; l + peak <= d; ++l) acf += g[l + peak] * std::conj(g[l]);
        const double g_peak = peak == 0 ? acf.real() : 2.0 * acf.real();
        const double s = r[peak] / g_peak;
        if (!(s > 0.0)) throw conditioning_error("spectral factor has the wrong sign", static_cast<std::ptrdiff_t>(peak));

        // Global phase that makes the coefficients real.
        std::complex<double> sq = 0.0;
        for (const auto& v : g) sq += v * v;
        const auto rot = std::polar(1.0, -0.5 * std::arg(sq));
        for (std::size_t k = 0; k <= d; ++k) out.a[k] = std::sqrt(s) * (g[k] * rot).real();
    }

    // Sign convention: first significant coefficient positive.
    double amax = 0.0;
    for (double v : out.a) amax = std::max(amax, std::abs(v));
    for (double v : out.a) {
        if (std::abs(v) > 1e-14 * amax) {
            if (v < 0.0)
                for (double& w : out.a) w = -w;
            break;
        }
    }

    // Residual against the caller's R on a theta grid.
    std::ptrdiff_t worst = -1;
    for (std::size_t i = 0; i < opt.check_points; ++i) {
        const double theta = opt.check_points == 1 ? 0.0 : std::numbers::pi * double(i) / double(opt.check_points - 1);
        const double c = std::cos(0.5 * theta);
        const double err = std::abs(detail::circle_modulus_sq(out.a, theta) - eval(R, c * c));
        if (err > out.residual) {
            out.residual = err;
            worst = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (out.residual > opt.tol)
        throw conditioning_error("spectral factorization residual " + std::to_string(out.residual) + " exceeds tolerance",
                                 worst, out.residual);
    return out;
}

/// The completion pair of one outcome: A is an L-polynomial, B an
/// (L-1)-polynomial, both in the Chebyshev-in-c basis.
struct PairAB {
    ParityPoly A;
    ParityPoly B;
};

/// Half-angle expansion of sum_k a_k e^{ik theta}.
inline PairAB assemble_pair(const std::vector<double>& a, std::size_t L) {
    if (a.size() != L + 1) throw invalid_input("assemble_pair needs L+1 circle coefficients");
    std::vector<double> A(L + 1, 0.0);
    std::vector<double> B(std::max<std::size_t>(L, 1), 0.0);
    for (std::size_t k = 0; k <= L; ++k) {
        const auto twice = static_cast<std::ptrdiff_t>(2 * k) - static_cast<std::ptrdiff_t>(L);
        const auto order = static_cast<std::size_t>(std::abs(twice));
        A[order] += a[k];
        if (order == 0) continue;
        const double sign = twice > 0 ? 1.0 : -1.0;
        const Poly u = chebyshev_u(order - 1);
        for (std::size_t j = 0; j < u.size(); ++j) B[j] += sign * a[k] * u.coeffs()[j];
    }
    PairAB pair;
    pair.A = ParityPoly{to_complex(Poly(Basis::chebyshev_c, std::move(A))), L, static_cast<int>(L % 2)};
    pair.B = ParityPoly{to_complex(Poly(Basis::chebyshev_c, std::move(B))), L == 0 ? 0 : L - 1,
                        static_cast<int>((L + 1) % 2)};
    return pair;
}

/// Max over `points` uniform c in [-1,1] of |A^2 + (1-c^2) B^2 - R(c^2)|.
inline double pair_residual(const PairAB& pair, const Poly& R, std::size_t points = 512) {
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double c = points == 1 ? 0.0 : -1.0 + 2.0 * double(i) / double(points - 1);
        const double v = std::norm(eval(pair.A.inner, c)) + (1.0 - c * c) * std::norm(eval(pair.B.inner, c));
        worst = std::max(worst, std::abs(v - eval(R, c * c)));
    }
    return worst;
}

struct CompletionSet {
    std::size_t N = 0;
    std::size_t L = 0;
    std::vector<PairAB> pairs;
};

/// Max over `points` uniform c of |sum_k (|A_k|^2 + (1-c^2)|B_k|^2) - 1|.
inline double completion_residual(const CompletionSet& cs, std::size_t points = 512) {
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double c = points == 1 ? 0.0 : -1.0 + 2.0 * double(i) / double(points - 1);
        double sum = 0.0;
        for (const auto& p : cs.pairs)
            sum += std::norm(eval(p.A.inner, c)) + (1.0 - c * c) * std::norm(eval(p.B.inner, c));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

/// Completes every outcome of `set` at query count L. Failures of individual
/// outcomes are collected and reported together.
inline CompletionSet complete_set(const OutcomeSet& set, std::size_t L, const FejerRieszOptions& opt = {}) {
    validate_outcome_set(set);
    if (set.degree_bound > L) throw invalid_input("outcome degree bound exceeds L");
    CompletionSet cs{set.N, L, {}};
    cs.pairs.reserve(set.N);
    std::string failures;
    for (std::size_t k = 0; k < set.N; ++k) {
        try {
            cs.pairs.push_back(assemble_pair(fejer_riesz(set.polys[k], L, opt).a, L));
        } catch (const error& e) {
            failures += " [outcome " + std::to_string(k) + ": " + e.what() + "]";
            cs.pairs.push_back(assemble_pair(std::vector<double>(L + 1, 0.0), L));
        }
    }
    if (!failures.empty()) throw conditioning_error("completion failed for" + failures);
    const double res = completion_residual(cs);
    if (res > opt.tol * double(std::max<std::size_t>(set.N, 1)))
        throw conditioning_error("completion set does not sum to one (residual " + std::to_string(res) + ")", -1, res);
    return cs;
}

}  // namespace gqae
