#pragma once

// Outcome polynomials of phase estimation with the sine initial state, the
// Bayesian estimator under a uniform prior on x, and the resulting risk.

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

namespace gqae {

/// N outcome polynomials over x that sum to one and are nonnegative on [0,1].
struct OutcomeSet {
    std::size_t N = 0;
    std::size_t degree_bound = 0;
    std::vector<Poly> polys;
};

struct OutcomeSetCheck {
    double normalization_error = 0.0;  // max |sum_k P_k(x) - 1|
    double min_value = 0.0;            // min_k,x P_k(x)
    std::size_t max_degree = 0;
};

/// Samples the normalization and positivity invariants at `samples` uniform
/// points of [0,1].
inline OutcomeSetCheck check_outcome_set(const OutcomeSet& set, std::size_t samples = 100) {
    OutcomeSetCheck out;
    out.min_value = std::numeric_limits<double>::infinity();
    for (const auto& p : set.polys) out.max_degree = std::max(out.max_degree, p.trimmed(0.0).degree());
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = samples == 1 ? 0.5 : double(i) / double(samples - 1);
        double sum = 0.0;
        for (const auto& p : set.polys) {
            const double v = eval(p, x);
            sum += v;
            out.min_value = std::min(out.min_value, v);
        }
        out.normalization_error = std::max(out.normalization_error, std::abs(sum - 1.0));
    }
    return out;
}

/// Throws invalid_input when the OutcomeSet invariants fail.
inline void validate_outcome_set(const OutcomeSet& set, double tol = 1e-9) {
    if (set.N == 0 || set.polys.size() != set.N) throw invalid_input("outcome set size does not match N");
    for (const auto& p : set.polys)
        if (variable_of(p.basis()) != Variable::x) throw invalid_input("outcome polynomials must be over x");
    const auto c = check_outcome_set(set);
    if (c.normalization_error > tol)
        throw invalid_input("outcome polynomials do not sum to one (error " + std::to_string(c.normalization_error) + ")");
    if (c.min_value < -tol) throw invalid_input("outcome polynomial is negative (" + std::to_string(c.min_value) + ")");
    if (c.max_degree > set.degree_bound) throw invalid_input("outcome polynomial exceeds the degree bound");
}

/// S_m = sum_{l=0}^{N-1-m} sin((l+1) pi/(N+1)) sin((l+m+1) pi/(N+1)).
inline double overlap_sum(std::size_t N, std::size_t m) {
    if (N == 0 || m >= N) throw invalid_input("overlap_sum needs 0 <= m <= N-1");
    const double w = std::numbers::pi / double(N + 1);
    double s = 0.0;
    for (std::size_t l = 0; l + m < N; ++l) s += std::sin(double(l + 1) * w) * std::sin(double(l + m + 1) * w);
    return s;
}

/// P_k(x) = 1/N + 4/(N(N+1)) sum_{m=1}^{N-1} S_m cos(2 pi m k / N) T_m(2x-1).
///
/// The constant term is carried by 1/N alone; the Chebyshev sum starts at
/// m = 1.
inline OutcomeSet qpe_outcome_polys(std::size_t N) {
    if (N < 2) throw invalid_input("sine-state phase estimation needs N >= 2");
    std::vector<double> S(N);
    for (std::size_t m = 0; m < N; ++m) S[m] = overlap_sum(N, m);
    const double scale = 4.0 / (double(N) * double(N + 1));
    OutcomeSet set{N, N - 1, {}};
    set.polys.reserve(N);
    for (std::size_t k = 0; k < N; ++k) {
        std::vector<double> c(N, 0.0);
        c[0] = 1.0 / double(N);
        for (std::size_t m = 1; m < N; ++m) {
            // reduce m k mod N before taking the angle to keep the argument small
            const auto mk = static_cast<double>((m * k) % N);
            c[m] = scale * S[m] * std::cos(2.0 * std::numbers::pi * mk / double(N));
        }
        set.polys.emplace_back(Basis::shifted_chebyshev_x, std::move(c));
    }
    try {
        validate_outcome_set(set);
    } catch (const invalid_input& e) {
        throw error(std::string("sine-QPE outcome set failed its invariants: ") + e.what());
    }
    return set;
}

/// Direct form: average of the two squared moduli at +theta and -theta with
/// theta = 2 arccos(sqrt(x)).
inline double qpe_probability_direct(std::size_t N, std::size_t k, double x) {
    if (N == 0 || k >= N) throw invalid_input("outcome index out of range");
    const double theta = 2.0 * std::acos(std::sqrt(std::clamp(x, 0.0, 1.0)));
    const double w = std::numbers::pi / double(N + 1);
    const double amp = std::sqrt(2.0 / double(N + 1));
    auto modulus_sq = [&](double phase) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < N; ++m)
            acc += amp * std::sin(double(m + 1) * w) * std::polar(1.0, double(m) * phase);
        return std::norm(acc);
    };
    const double shift = 2.0 * std::numbers::pi * double(k) / double(N);
    return (modulus_sq(theta - shift) + modulus_sq(-theta - shift)) / (2.0 * double(N));
}

/// Risk of an outcome set under the uniform prior.
struct RiskReport {
    std::size_t N = 0;
    std::vector<double> estimates;  // x~_k
    std::vector<double> weights;    // int_0^1 P_k
    std::vector<bool> reachable;
    double dx = 0.0;
    double ratio = 0.0;  // sqrt(6) N dx / pi
};

/// sqrt(6) N dx / pi.
inline double risk_ratio(double dx, std::size_t N) {
    return std::sqrt(6.0) * double(N) * dx / std::numbers::pi;
}

/// Outcomes with int P_k below this are unreachable and carry zero weight.
inline constexpr double unreachable_weight = 1e-14;

/// Posterior means x~_k = int P_k x / int P_k. Unreachable outcomes get 1/2.
inline std::vector<double> bayes_estimates(const OutcomeSet& set) {
    std::vector<double> est;
    est.reserve(set.polys.size());
    for (const auto& p : set.polys) {
        const double w = moment_integral(p, 0);
        est.push_back(w <= unreachable_weight ? 0.5 : moment_integral(p, 1, 0.0) / w);
    }
    return est;
}

/// (Delta x)^2 = sum_k int_0^1 P_k(x) (x - x~_k)^2 dx, with x~ defaulting to
/// the Bayesian estimates.
inline RiskReport risk(const OutcomeSet& set, std::vector<double> estimates = {}) {
    if (estimates.empty()) estimates = bayes_estimates(set);
    if (estimates.size() != set.polys.size()) throw invalid_input("one estimate per outcome is required");
    RiskReport rep;
    rep.N = set.N;
    rep.estimates = std::move(estimates);
    double var = 0.0;
    for (std::size_t k = 0; k < set.polys.size(); ++k) {
        const double w = moment_integral(set.polys[k], 0);
        const bool live = w > unreachable_weight;
        rep.weights.push_back(live ? w : 0.0);
        rep.reachable.push_back(live);
        if (live) var += moment_integral(set.polys[k], 2, rep.estimates[k]);
    }
    rep.dx = std::sqrt(std::max(var, 0.0));
    rep.ratio = risk_ratio(rep.dx, set.N);
    return rep;
}

struct RiskRow {
    std::size_t n = 0;
    std::size_t N = 0;
    double dx = 0.0;
    double ratio = 0.0;
};

/// Risk of sine-state phase estimation for N = 2^n, n in [n_min, n_max].
inline std::vector<RiskRow> sweep_risk(std::size_t n_min, std::size_t n_max) {
    if (n_min < 1 || n_max > 10 || n_min > n_max) throw invalid_input("sweep_risk needs 1 <= n_min <= n_max <= 10");
    std::vector<RiskRow> rows;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        const std::size_t N = std::size_t{1} << n;
        const auto rep = risk(qpe_outcome_polys(N));
        rows.push_back({n, N, rep.dx, rep.ratio});
    }
    return rows;
}

}  // namespace gqae
