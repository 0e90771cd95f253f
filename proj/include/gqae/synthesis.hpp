#pragma once

// Synthesis of the tunable unitaries U_0..U_L of the generalized
// qubitization circuit.
//
// In the W(theta) model with c = cos(theta/2), s = sin(theta/2), the state
// after the j-th query and U_j is
//
//   sum_k [ A_k(c) |0> + s B_k(c) |1> ] |k>,
//
// with A_k of degree <= j and parity j, B_k of degree <= j-1 and parity j-1.
// Odd steps query W, even steps W^{-1}. One step forward reads
//
//   odd j:   A <- U_j (c A - (1-c^2) B),   B <- A + c B
//   even j:  A <- U_j (c A + (1-c^2) B),   B <- -A + c B
//
// Peeling a step off picks U_j so that the top coefficients cancel; this is
// possible exactly because the top coefficient vectors have equal norm.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gqae/completion.hpp"
#include "gqae/errors.hpp"
#include "gqae/polynomials.hpp"

namespace gqae {

using UnitaryMatrix = Eigen::MatrixXcd;

/// max |U^dagger U - I|.
inline double unitarity_error(const UnitaryMatrix& U) {
    const auto n = U.rows();
    return (U.adjoint() * U - UnitaryMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// A unitary U with U^dagger a = b for vectors of equal norm.
///
/// U^dagger is a product of two reflections on span{a, b}, one along a and one
/// along a + y with y the phase-aligned copy of b, followed by a phase on the
/// b direction; it is the identity on the orthogonal complement. Since
/// a^dagger y >= 0, |a + y| >= |a| and neither reflection axis degenerates.
/// Zero vectors map by the identity.
inline UnitaryMatrix unitary_mapping(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double tol = 1e-9) {
    if (a.size() != b.size()) throw invalid_input("unitary_mapping needs vectors of equal dimension");
    const auto n = a.size();
    const double na = a.norm(), nb = b.norm();
    if (std::abs(na - nb) > tol * std::max(1.0, na))
        throw invalid_input("unitary_mapping: norms differ (" + std::to_string(na) + " vs " + std::to_string(nb) + ")");
    const UnitaryMatrix I = UnitaryMatrix::Identity(n, n);
    if (na <= 1e-12 && nb <= 1e-12) return I;

    const Eigen::VectorXcd ah = a / na;
    const Eigen::VectorXcd bh = b / nb;
    const std::complex<double> overlap = ah.dot(bh);  // ah^dagger bh
    const std::complex<double> phase = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : 1.0;
    const Eigen::VectorXcd w = ah + phase * bh;
    // ah -> -ah -> phase * bh -> bh
    const UnitaryMatrix first = I - 2.0 * (ah * ah.adjoint());
    const UnitaryMatrix second = I - (2.0 / w.squaredNorm()) * (w * w.adjoint());
    const UnitaryMatrix M = (I + (std::conj(phase) - 1.0) * (bh * bh.adjoint())) * second * first;
    return M.adjoint();
}

/// Signature of a unitary chooser: returns U with U^dagger a = b.
using UnitaryMapper = std::function<UnitaryMatrix(const Eigen::VectorXcd&, const Eigen::VectorXcd&)>;

inline UnitaryMatrix default_mapper(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return unitary_mapping(a, b);
}

struct GQCircuit {
    std::size_t N = 0;
    std::size_t L = 0;
    std::vector<UnitaryMatrix> unitaries;  // application order U_0..U_L
};

/// Polynomial coefficient state of the circuit at some level.
struct PolyState {
    std::vector<CPoly> A;
    std::vector<CPoly> B;
};

namespace detail {

inline CPoly one_minus_c_squared_times(const CPoly& p) {
    return p - mul_by_c(mul_by_c(p));
}

inline CPoly truncated(const CPoly& p, std::size_t n) {
    std::vector<std::complex<double>> c(n, 0.0);
    for (std::size_t i = 0; i < n && i < p.size(); ++i) c[i] = p.coeffs()[i];
    return CPoly(Basis::chebyshev_c, std::move(c));
}

inline std::vector<CPoly> mix(const UnitaryMatrix& U, const std::vector<CPoly>& polys) {
    std::size_t len = 1;
    for (const auto& p : polys) len = std::max(len, p.size());
    std::vector<CPoly> out;
    out.reserve(polys.size());
    for (Eigen::Index k = 0; k < U.rows(); ++k) {
        std::vector<std::complex<double>> c(len, 0.0);
        for (Eigen::Index l = 0; l < U.cols(); ++l) {
            const auto u = U(k, l);
            if (u == 0.0) continue;
            const auto& src = polys[static_cast<std::size_t>(l)].coeffs();
            for (std::size_t i = 0; i < src.size(); ++i) c[i] += u * src[i];
        }
        out.emplace_back(Basis::chebyshev_c, std::move(c));
    }
    return out;
}

// Leading monomial coefficient of T_n.
inline double chebyshev_lead(std::size_t n) {
    return n == 0 ? 1.0 : std::ldexp(1.0, static_cast<int>(n) - 1);
}

}  // namespace detail

/// sup over `points` Chebyshev nodes in c of |sum_k |A_k|^2 + (1-c^2)|B_k|^2 - 1|.
inline double norm_identity_residual(const PolyState& st, std::size_t points = 257) {
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double c = points == 1 ? 0.0 : std::cos(std::numbers::pi * double(i) / double(points - 1));
        double sum = 0.0;
        for (std::size_t k = 0; k < st.A.size(); ++k)
            sum += std::norm(eval(st.A[k], c)) + (1.0 - c * c) * std::norm(eval(st.B[k], c));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

struct ReduceResult {
    UnitaryMatrix U;
    PolyState state;        // level j-1
    double top_residual{};  // largest dropped coefficient
};

struct SynthesisOptions {
    /// Largest coefficient a degree reduction may drop.
    double reduction_tol = 1e-7;
    /// Allowed deviation of the norm identity before a step.
    double identity_tol = 1e-8;
    /// Base case: allowed |B| and | |alpha| - 1 |.
    double base_tol = 1e-8;
    bool check_identity = true;
};

/// Peels the j-th query off: returns U_j and the level-(j-1) polynomials.
inline ReduceResult reduce_step(const PolyState& st, std::size_t j, const UnitaryMapper& mapper = default_mapper,
                                const SynthesisOptions& opt = {}) {
    if (j == 0) throw invalid_input("reduce_step needs j >= 1");
    const std::size_t N = st.A.size();
    if (st.B.size() != N || N == 0) throw invalid_input("reduce_step needs matching A and B sequences");
    for (std::size_t k = 0; k < N; ++k) {
        if (st.A[k].basis() != Basis::chebyshev_c || st.B[k].basis() != Basis::chebyshev_c)
            throw basis_error("synthesis works in the Chebyshev-in-c basis");
        if (st.A[k].trimmed(0.0).degree() > j || st.B[k].trimmed(0.0).degree() > j - 1)
            throw invalid_input("reduce_step: input degree exceeds level " + std::to_string(j));
    }
    if (opt.check_identity) {
        const double res = norm_identity_residual(st);
        if (res > opt.identity_tol)
            throw invalid_input("reduce_step: norm identity violated at level " + std::to_string(j) + " (residual " +
                                std::to_string(res) + ")");
    }

    const bool odd = (j % 2) == 1;
    // Top coefficients in monomial scale, divided by lead(T_j).
    const double ratio = detail::chebyshev_lead(j - 1) / detail::chebyshev_lead(j);
    Eigen::VectorXcd a(static_cast<Eigen::Index>(N)), b(static_cast<Eigen::Index>(N));
    for (std::size_t k = 0; k < N; ++k) {
        a(static_cast<Eigen::Index>(k)) = st.A[k][j];
        b(static_cast<Eigen::Index>(k)) = (odd ? 1.0 : -1.0) * ratio * st.B[k][j - 1];
    }
    ReduceResult out;
    out.U = mapper(a, b);
    const auto rotated = detail::mix(out.U.adjoint(), st.A);

    const std::size_t a_len = j;                          // degree <= j-1
    const std::size_t b_len = j >= 2 ? j - 1 : 1;         // degree <= j-2 (zero at j = 1)
    out.state.A.reserve(N);
    out.state.B.reserve(N);
    for (std::size_t k = 0; k < N; ++k) {
        const CPoly wide_b = st.B[k].padded(j);
        const CPoly sB = detail::one_minus_c_squared_times(wide_b);
        CPoly An = odd ? mul_by_c(rotated[k]) + sB : mul_by_c(rotated[k]) - sB;
        CPoly Bn = odd ? mul_by_c(wide_b) - rotated[k] : mul_by_c(wide_b) + rotated[k];
        for (std::size_t i = a_len; i < An.size(); ++i) out.top_residual = std::max(out.top_residual, std::abs(An.coeffs()[i]));
        for (std::size_t i = (j >= 2 ? j - 1 : 0); i < Bn.size(); ++i)
            out.top_residual = std::max(out.top_residual, std::abs(Bn.coeffs()[i]));
        out.state.A.push_back(detail::truncated(An, a_len));
        out.state.B.push_back(j >= 2 ? detail::truncated(Bn, b_len) : CPoly(Basis::chebyshev_c, {0.0}));
    }
    if (out.top_residual > opt.reduction_tol)
        throw conditioning_error("degree reduction failed at level " + std::to_string(j) + " (residual " +
                                     std::to_string(out.top_residual) + ")",
                                 static_cast<std::ptrdiff_t>(j), out.top_residual);
    return out;
}

/// Level-L polynomial state of a completion set.
inline PolyState state_of(const CompletionSet& cs) {
    PolyState st;
    for (const auto& p : cs.pairs) {
        st.A.push_back(p.A.inner);
        st.B.push_back(p.B.inner);
    }
    return st;
}

/// U_0..U_L whose circuit outputs the completion set's polynomials.
inline GQCircuit synthesize(const CompletionSet& cs, const UnitaryMapper& mapper = default_mapper,
                            const SynthesisOptions& opt = {}) {
    if (cs.pairs.size() != cs.N || cs.N == 0) throw invalid_input("completion set size does not match N");
    GQCircuit circ{cs.N, cs.L, std::vector<UnitaryMatrix>(cs.L + 1)};
    PolyState st = state_of(cs);
    for (std::size_t j = cs.L; j >= 1; --j) {
        auto step = reduce_step(st, j, mapper, opt);
        circ.unitaries[j] = std::move(step.U);
        st = std::move(step.state);
    }
    const auto n = static_cast<Eigen::Index>(cs.N);
    Eigen::VectorXcd alpha(n);
    double b_norm = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        alpha(k) = st.A[static_cast<std::size_t>(k)][0];
        b_norm = std::max(b_norm, st.B[static_cast<std::size_t>(k)].max_abs_coeff());
        if (st.A[static_cast<std::size_t>(k)].trimmed(0.0).degree() > 0 &&
            st.A[static_cast<std::size_t>(k)].trimmed(0.0).max_abs_coeff() > opt.base_tol)
            throw conditioning_error("base level is not constant");
    }
    if (b_norm > opt.base_tol || std::abs(alpha.norm() - 1.0) > opt.base_tol)
        throw conditioning_error("base case violated: |B| = " + std::to_string(b_norm) +
                                     ", |alpha| = " + std::to_string(alpha.norm()),
                                 0, b_norm);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(n);
    e0(0) = 1.0;
    // U_0 e_0 = alpha, i.e. U_0^dagger alpha = e_0.
    circ.unitaries[0] = mapper(alpha / alpha.norm(), e0);
    return circ;
}

/// Forward pass through the circuit, tracking A_k and B_k symbolically.
inline PolyState reconstruct_polys(const GQCircuit& circ) {
    const std::size_t N = circ.N;
    PolyState st;
    for (std::size_t k = 0; k < N; ++k) {
        st.A.emplace_back(Basis::chebyshev_c, std::vector<std::complex<double>>{circ.unitaries[0](static_cast<Eigen::Index>(k), 0)});
        st.B.emplace_back(Basis::chebyshev_c, std::vector<std::complex<double>>{0.0});
    }
    for (std::size_t j = 1; j <= circ.L; ++j) {
        const bool odd = (j % 2) == 1;
        std::vector<CPoly> pre, nextB;
        for (std::size_t k = 0; k < N; ++k) {
            const CPoly sB = detail::one_minus_c_squared_times(st.B[k]);
            pre.push_back(odd ? mul_by_c(st.A[k]) - sB : mul_by_c(st.A[k]) + sB);
            nextB.push_back(odd ? st.A[k] + mul_by_c(st.B[k]) : mul_by_c(st.B[k]) - st.A[k]);
        }
        st.A = detail::mix(circ.unitaries[j], pre);
        st.B = std::move(nextB);
        for (std::size_t k = 0; k < N; ++k) {
            st.A[k] = detail::truncated(st.A[k], j + 1);
            st.B[k] = detail::truncated(st.B[k], j);
        }
    }
    return st;
}

/// P_k(x) with P_k(c^2) = |A_k(c)|^2 + (1-c^2)|B_k(c)|^2, in the shifted
/// Chebyshev basis.
inline std::vector<Poly> probability_polys(const PolyState& st) {
    std::vector<Poly> out;
    for (std::size_t k = 0; k < st.A.size(); ++k) {
        const Poly a2 = abs_squared(st.A[k]);
        const Poly b2 = abs_squared(st.B[k]);
        const Poly sb2 = b2 - mul_by_c(mul_by_c(b2));
        out.push_back(even_part_to_x(a2 + sb2));
    }
    return out;
}

/// Largest shifted-Chebyshev coefficient gap between the circuit's outcome
/// polynomials and `target`.
inline double round_trip_residual(const GQCircuit& circ, const OutcomeSet& target) {
    if (target.polys.size() != circ.N) throw invalid_input("circuit and target differ in N");
    const auto got = probability_polys(reconstruct_polys(circ));
    double worst = 0.0;
    for (std::size_t k = 0; k < circ.N; ++k) {
        const Poly want = convert(target.polys[k], Basis::shifted_chebyshev_x);
        const std::size_t n = std::max(want.size(), got[k].size());
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(got[k][i] - want[i]));
    }
    return worst;
}

}  // namespace gqae
