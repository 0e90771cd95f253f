#pragma once

// Real and complex polynomials in four bases:
//
//   monomial_x           sum c_m x^m
//   monomial_c           sum c_m c^m
//   chebyshev_c          sum c_m T_m(c)
//   shifted_chebyshev_x  sum c_m T_m(2x - 1)
//
// The outcome polynomials live in x in [0,1]; completion pairs and the
// synthesis recursion live in c = cos(theta/2) in [-1,1], with x = c^2.
// Chebyshev bases are the interchange format. Monomial forms are kept for
// I/O and small-degree checks only; their conversion is exponentially
// ill-conditioned in the degree.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "gqae/errors.hpp"

namespace gqae {

enum class Basis { monomial_x, monomial_c, chebyshev_c, shifted_chebyshev_x };

enum class Variable { x, c };

constexpr Variable variable_of(Basis b) noexcept {
    return (b == Basis::monomial_x || b == Basis::shifted_chebyshev_x) ? Variable::x : Variable::c;
}

constexpr bool is_chebyshev(Basis b) noexcept {
    return b == Basis::chebyshev_c || b == Basis::shifted_chebyshev_x;
}

inline std::string_view basis_name(Basis b) noexcept {
    switch (b) {
        case Basis::monomial_x: return "monomial-x";
        case Basis::monomial_c: return "monomial-c";
        case Basis::chebyshev_c: return "chebyshev-c";
        case Basis::shifted_chebyshev_x: return "shifted-chebyshev-x";
    }
    return "?";
}

inline Basis parse_basis(std::string_view name) {
    for (Basis b : {Basis::monomial_x, Basis::monomial_c, Basis::chebyshev_c, Basis::shifted_chebyshev_x})
        if (basis_name(b) == name) return b;
    throw invalid_input("unknown polynomial basis '" + std::string(name) + "'");
}

namespace detail {
template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}
}  // namespace detail

/// A polynomial with an explicit basis tag. Coefficient index = degree/order.
///
/// The coefficient vector is never implicitly trimmed; `trimmed()` is the
/// only way trailing coefficients disappear.
template <class T>
class BasicPoly {
   public:
    using value_type = T;

    BasicPoly() : basis_(Basis::monomial_x), coeffs_{T(0)} {}
    BasicPoly(Basis basis, std::vector<T> coeffs) : basis_(basis), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(T(0));
        for (const auto& v : coeffs_)
            if (!std::isfinite(detail::magnitude(v))) throw invalid_input("non-finite polynomial coefficient");
    }
    BasicPoly(Basis basis, std::initializer_list<T> coeffs) : BasicPoly(basis, std::vector<T>(coeffs)) {}

    /// A constant polynomial.
    static BasicPoly constant(Basis basis, T value) { return BasicPoly(basis, std::vector<T>{value}); }

    /// A single basis element of order `m` (x^m, c^m, T_m(c) or T_m(2x-1)).
    static BasicPoly unit(Basis basis, std::size_t m, T scale = T(1)) {
        std::vector<T> c(m + 1, T(0));
        c[m] = scale;
        return BasicPoly(basis, std::move(c));
    }

    Basis basis() const noexcept { return basis_; }
    const std::vector<T>& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Nominal degree: length of the coefficient vector minus one.
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }

    /// Coefficient at order m; zero past the end.
    T operator[](std::size_t m) const noexcept { return m < coeffs_.size() ? coeffs_[m] : T(0); }

    double max_abs_coeff() const noexcept {
        double m = 0.0;
        for (const auto& v : coeffs_) m = std::max(m, detail::magnitude(v));
        return m;
    }

    /// Highest order whose coefficient exceeds `rel_tol` times the largest.
    std::size_t effective_degree(double rel_tol = 1e-12) const noexcept {
        const double cut = rel_tol * max_abs_coeff();
        std::size_t d = coeffs_.size() - 1;
        while (d > 0 && detail::magnitude(coeffs_[d]) <= cut) --d;
        return d;
    }

    /// Drops trailing coefficients at or below `rel_tol` times the largest.
    BasicPoly trimmed(double rel_tol = 1e-12) const {
        std::vector<T> c(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(effective_degree(rel_tol)) + 1);
        return BasicPoly(basis_, std::move(c));
    }

    /// Zero-pads (never truncates) to at least `n` coefficients.
    BasicPoly padded(std::size_t n) const {
        auto c = coeffs_;
        if (c.size() < n) c.resize(n, T(0));
        return BasicPoly(basis_, std::move(c));
    }

    BasicPoly& operator+=(const BasicPoly& o) {
        require_same_basis(o);
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    BasicPoly& operator-=(const BasicPoly& o) {
        require_same_basis(o);
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    BasicPoly& operator*=(T s) {
        for (auto& v : coeffs_) v *= s;
        return *this;
    }

    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
    friend BasicPoly operator-(BasicPoly a) { return a *= T(-1); }
    friend BasicPoly operator*(BasicPoly a, T s) { return a *= s; }
    friend BasicPoly operator*(T s, BasicPoly a) { return a *= s; }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
        a.require_same_basis(b);
        std::vector<T> out(a.size() + b.size() - 1, T(0));
        if (is_chebyshev(a.basis_)) {
            // T_m T_n = (T_{m+n} + T_{|m-n|}) / 2
            for (std::size_t m = 0; m < a.size(); ++m)
                for (std::size_t n = 0; n < b.size(); ++n) {
                    const T half = a.coeffs_[m] * b.coeffs_[n] * 0.5;
                    out[m + n] += half;
                    out[m > n ? m - n : n - m] += half;
                }
        } else {
            for (std::size_t m = 0; m < a.size(); ++m)
                for (std::size_t n = 0; n < b.size(); ++n) out[m + n] += a.coeffs_[m] * b.coeffs_[n];
        }
        return BasicPoly(a.basis_, std::move(out));
    }

    friend bool operator==(const BasicPoly&, const BasicPoly&) = default;

   private:
    void require_same_basis(const BasicPoly& o) const {
        if (o.basis_ != basis_)
            throw basis_error("basis mismatch: " + std::string(basis_name(basis_)) + " vs " +
                              std::string(basis_name(o.basis_)));
    }

    Basis basis_;
    std::vector<T> coeffs_;
};

using Poly = BasicPoly<double>;
using CPoly = BasicPoly<std::complex<double>>;

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

template <class T, class S>
auto horner(const std::vector<T>& c, S t) {
    using R = decltype(T{} * S{});
    R acc = R(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

/// Clenshaw recurrence for sum c_m T_m(t).
template <class T, class S>
auto clenshaw(const std::vector<T>& c, S t) {
    using R = decltype(T{} * S{});
    R b1 = R(0), b2 = R(0);
    for (std::size_t k = c.size(); k-- > 1;) {
        R b0 = c[k] + (S(2) * t) * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + t * b1 - b2;
}

}  // namespace detail

/// Value at t. `t` is x for the x bases and c for the c bases.
template <class T>
T eval(const BasicPoly<T>& p, double t) {
    switch (p.basis()) {
        case Basis::monomial_x:
        case Basis::monomial_c: return detail::horner(p.coeffs(), t);
        case Basis::chebyshev_c: return detail::clenshaw(p.coeffs(), t);
        case Basis::shifted_chebyshev_x: return detail::clenshaw(p.coeffs(), 2.0 * t - 1.0);
    }
    return T(0);
}

// ---------------------------------------------------------------------------
// Multiplication by the variable

/// c * p for p in the Chebyshev-in-c basis: c T_m = (T_{m+1} + T_{m-1}) / 2, c T_0 = T_1.
template <class T>
BasicPoly<T> mul_by_c(const BasicPoly<T>& p) {
    if (p.basis() == Basis::monomial_c) {
        std::vector<T> out(p.size() + 1, T(0));
        for (std::size_t m = 0; m < p.size(); ++m) out[m + 1] = p.coeffs()[m];
        return BasicPoly<T>(p.basis(), std::move(out));
    }
    if (p.basis() != Basis::chebyshev_c) throw basis_error("mul_by_c needs a polynomial in c");
    const auto& c = p.coeffs();
    std::vector<T> out(c.size() + 1, T(0));
    out[1] += c[0];
    for (std::size_t m = 1; m < c.size(); ++m) {
        out[m + 1] += 0.5 * c[m];
        out[m - 1] += 0.5 * c[m];
    }
    return BasicPoly<T>(p.basis(), std::move(out));
}

/// x * p for p in an x basis. In the shifted basis
/// x T*_m = (T*_{m+1} + 2 T*_m + T*_{m-1}) / 4 and x T*_0 = (T*_0 + T*_1) / 2.
template <class T>
BasicPoly<T> mul_by_x(const BasicPoly<T>& p) {
    if (p.basis() == Basis::monomial_x) {
        std::vector<T> out(p.size() + 1, T(0));
        for (std::size_t m = 0; m < p.size(); ++m) out[m + 1] = p.coeffs()[m];
        return BasicPoly<T>(p.basis(), std::move(out));
    }
    if (p.basis() != Basis::shifted_chebyshev_x) throw basis_error("mul_by_x needs a polynomial in x");
    const auto& c = p.coeffs();
    std::vector<T> out(c.size() + 1, T(0));
    out[0] += 0.5 * c[0];
    out[1] += 0.5 * c[0];
    for (std::size_t m = 1; m < c.size(); ++m) {
        out[m + 1] += 0.25 * c[m];
        out[m] += 0.5 * c[m];
        out[m - 1] += 0.25 * c[m];
    }
    return BasicPoly<T>(p.basis(), std::move(out));
}

// ---------------------------------------------------------------------------
// Basis conversion

namespace detail {

// Chebyshev -> monomial by accumulating the three-term recurrence.
// `shifted` selects T_m(2x-1) instead of T_m(c).
template <class T>
std::vector<T> chebyshev_to_monomial(const std::vector<T>& c, bool shifted) {
    const std::size_t n = c.size();
    std::vector<T> out(n, T(0));
    // prev = T_{m-1}, cur = T_m as monomial coefficient vectors.
    std::vector<double> prev(n + 1, 0.0), cur(n + 1, 0.0), next(n + 1, 0.0);
    cur[0] = 1.0;
    out[0] += c[0];
    if (n == 1) return out;
    prev = cur;
    std::fill(cur.begin(), cur.end(), 0.0);
    if (shifted) {
        cur[0] = -1.0;
        cur[1] = 2.0;
    } else {
        cur[1] = 1.0;
    }
    for (std::size_t m = 1;; ++m) {
        for (std::size_t i = 0; i <= m; ++i) out[i] += c[m] * cur[i];
        if (m + 1 >= n) break;
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i <= m; ++i) {
            if (shifted) {
                next[i + 1] += 4.0 * cur[i];
                next[i] -= 2.0 * cur[i];
            } else {
                next[i + 1] += 2.0 * cur[i];
            }
        }
        for (std::size_t i = 0; i < m; ++i) next[i] -= prev[i];
        prev.swap(cur);
        cur.swap(next);
    }
    return out;
}

}  // namespace detail

/// Same function, new basis. Only x<->x and c<->c conversions are allowed;
/// see `compose_with_square` for moving from x to c.
template <class T>
BasicPoly<T> convert(const BasicPoly<T>& p, Basis target) {
    if (p.basis() == target) return p;
    if (variable_of(p.basis()) != variable_of(target))
        throw basis_error("cannot convert " + std::string(basis_name(p.basis())) + " to " +
                          std::string(basis_name(target)) + " (different variables)");
    if (is_chebyshev(p.basis())) {
        // Chebyshev -> monomial
        return BasicPoly<T>(target, detail::chebyshev_to_monomial(p.coeffs(), p.basis() == Basis::shifted_chebyshev_x));
    }
    // monomial -> Chebyshev by Horner in the target basis
    const auto& c = p.coeffs();
    BasicPoly<T> acc = BasicPoly<T>::constant(target, c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc = (target == Basis::chebyshev_c) ? mul_by_c(acc) : mul_by_x(acc);
        acc += BasicPoly<T>::constant(target, c[i]);
    }
    return acc.padded(c.size());
}

/// R(x) -> R(c^2) in the Chebyshev-in-c basis. Exact: T_m(2c^2 - 1) = T_{2m}(c).
template <class T>
BasicPoly<T> compose_with_square(const BasicPoly<T>& r) {
    if (variable_of(r.basis()) != Variable::x) throw basis_error("compose_with_square needs a polynomial in x");
    const auto s = convert(r, Basis::shifted_chebyshev_x);
    std::vector<T> out(2 * s.size() - 1, T(0));
    for (std::size_t m = 0; m < s.size(); ++m) out[2 * m] = s.coeffs()[m];
    return BasicPoly<T>(Basis::chebyshev_c, std::move(out));
}

/// Inverse of `compose_with_square` for an even polynomial in c: returns R
/// with R(c^2) = p(c), in the shifted-Chebyshev-in-x basis. Odd-order
/// coefficients of p are ignored.
template <class T>
BasicPoly<T> even_part_to_x(const BasicPoly<T>& p) {
    const auto q = convert(p, Basis::chebyshev_c);
    std::vector<T> out(q.size() / 2 + 1, T(0));
    for (std::size_t m = 0; 2 * m < q.size(); ++m) out[m] = q.coeffs()[2 * m];
    return BasicPoly<T>(Basis::shifted_chebyshev_x, std::move(out));
}

/// Complex lift of a real polynomial.
inline CPoly to_complex(const Poly& p) {
    std::vector<std::complex<double>> c(p.coeffs().begin(), p.coeffs().end());
    return CPoly(p.basis(), std::move(c));
}

/// Coefficientwise conjugate.
inline CPoly conj(const CPoly& p) {
    auto c = p.coeffs();
    for (auto& v : c) v = std::conj(v);
    return CPoly(p.basis(), std::move(c));
}

/// |p|^2 = conj(p) * p; real-valued, returned as a real polynomial.
inline Poly abs_squared(const CPoly& p) {
    const CPoly q = conj(p) * p;
    std::vector<double> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = q.coeffs()[i].real();
    return Poly(p.basis(), std::move(out));
}

// ---------------------------------------------------------------------------
// Moments on [0,1]

/// Integral over [0,1] of p(x) (x - y)^n for n in {0,1,2}, in closed form
/// from shifted-Chebyshev coefficients: int_0^1 T_m(2x-1) dx = 1/(1-m^2) for
/// even m and 0 for odd m.
template <class T>
T moment_integral(const BasicPoly<T>& p, int n, double y = 0.0) {
    if (n < 0 || n > 2) throw invalid_input("moment order must be 0, 1 or 2");
    if (variable_of(p.basis()) != Variable::x) throw basis_error("moment_integral needs a polynomial in x");
    auto q = convert(p, Basis::shifted_chebyshev_x);
    for (int i = 0; i < n; ++i) q = mul_by_x(q) - q * T(y);
    T acc = T(0);
    const auto& c = q.coeffs();
    for (std::size_t m = 0; m < c.size(); m += 2) acc += c[m] / (1.0 - double(m) * double(m));
    return acc;
}

// ---------------------------------------------------------------------------
// Parity-constrained polynomials

/// A polynomial in c of degree <= `degree_bound` whose coefficients vanish
/// (up to tolerance) at orders of the wrong parity.
struct ParityPoly {
    CPoly inner;
    std::size_t degree_bound = 0;
    int parity = 0;

    /// Largest magnitude among wrong-parity coefficients and coefficients past
    /// the degree bound, relative to nothing (absolute).
    double violation() const {
        double worst = 0.0;
        for (std::size_t m = 0; m < inner.size(); ++m) {
            const bool wrong = (static_cast<int>(m % 2) != parity) || m > degree_bound;
            if (wrong) worst = std::max(worst, std::abs(inner.coeffs()[m]));
        }
        return worst;
    }

    bool valid(double tol = 1e-10) const { return violation() <= tol; }
};

inline ParityPoly make_parity_poly(CPoly p, std::size_t degree_bound) {
    if (variable_of(p.basis()) != Variable::c) throw basis_error("ParityPoly lives in the c variable");
    return ParityPoly{std::move(p), degree_bound, static_cast<int>(degree_bound % 2)};
}

// Chebyshev polynomials of the second kind, U_n = 2 (T_n + T_{n-2} + ...) with
// the T_0 term counted once.
inline Poly chebyshev_u(std::size_t n) {
    std::vector<double> c(n + 1, 0.0);
    for (std::size_t j = n % 2; j <= n; j += 2) c[j] = 2.0;
    if (n % 2 == 0) c[0] = 1.0;
    return Poly(Basis::chebyshev_c, std::move(c));
}

}  // namespace gqae
