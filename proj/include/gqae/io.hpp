#pragma once

// JSON and CSV forms of the library's artifacts.
//
//   polynomial      {"basis": "<basis-name>", "coeffs": [...]}
//   outcome set     {"N", "degree_bound", "polys": [polynomial, ...]}
//   completion set  {"N", "L", "pairs": [{"A": polynomial, "B": polynomial}]}
//   circuit         {"N", "L", "unitaries": [[[re, im], ...] per row] per matrix}
//
// Floats in CSV use 17 significant digits.

#include <json.hpp>

#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "gqae/completion.hpp"
#include "gqae/errors.hpp"
#include "gqae/lowerbound.hpp"
#include "gqae/polynomials.hpp"
#include "gqae/simulator.hpp"
#include "gqae/sineqpe.hpp"
#include "gqae/synthesis.hpp"

namespace gqae {

using json = nlohmann::json;

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// --- polynomials -----------------------------------------------------------

inline json to_json(const Poly& p) {
    return json{{"basis", std::string(basis_name(p.basis()))}, {"coeffs", p.coeffs()}};
}

/// Real view of a complex polynomial; throws when an imaginary part exceeds tol.
inline Poly real_part(const CPoly& p, double tol = 1e-9) {
    std::vector<double> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) {
        if (std::abs(v.imag()) > tol) throw invalid_input("polynomial has complex coefficients");
        c.push_back(v.real());
    }
    return Poly(p.basis(), std::move(c));
}

inline Poly poly_from_json(const json& j) {
    try {
        return Poly(parse_basis(j.at("basis").get<std::string>()), j.at("coeffs").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed polynomial: ") + e.what());
    }
}

// --- outcome sets ----------------------------------------------------------

inline json to_json(const OutcomeSet& s) {
    json polys = json::array();
    for (const auto& p : s.polys) polys.push_back(to_json(p));
    return json{{"N", s.N}, {"degree_bound", s.degree_bound}, {"polys", polys}};
}

inline OutcomeSet outcome_set_from_json(const json& j) {
    try {
        OutcomeSet s;
        s.N = j.at("N").get<std::size_t>();
        s.degree_bound = j.at("degree_bound").get<std::size_t>();
        for (const auto& p : j.at("polys")) s.polys.push_back(poly_from_json(p));
        return s;
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed outcome set: ") + e.what());
    }
}

// --- completion sets -------------------------------------------------------

inline json to_json(const CompletionSet& cs) {
    json pairs = json::array();
    for (const auto& p : cs.pairs) pairs.push_back({{"A", to_json(real_part(p.A.inner))}, {"B", to_json(real_part(p.B.inner))}});
    return json{{"N", cs.N}, {"L", cs.L}, {"pairs", pairs}};
}

inline CompletionSet completion_set_from_json(const json& j) {
    try {
        CompletionSet cs;
        cs.N = j.at("N").get<std::size_t>();
        cs.L = j.at("L").get<std::size_t>();
        for (const auto& p : j.at("pairs")) {
            auto A = convert(to_complex(poly_from_json(p.at("A"))), Basis::chebyshev_c);
            auto B = convert(to_complex(poly_from_json(p.at("B"))), Basis::chebyshev_c);
            cs.pairs.push_back({ParityPoly{std::move(A), cs.L, static_cast<int>(cs.L % 2)},
                                ParityPoly{std::move(B), cs.L == 0 ? 0 : cs.L - 1, static_cast<int>((cs.L + 1) % 2)}});
        }
        return cs;
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed completion set: ") + e.what());
    }
}

// --- circuits --------------------------------------------------------------

inline json to_json(const GQCircuit& c) {
    json mats = json::array();
    for (const auto& U : c.unitaries) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < U.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < U.cols(); ++k) row.push_back(json::array({U(i, k).real(), U(i, k).imag()}));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    return json{{"N", c.N}, {"L", c.L}, {"unitaries", mats}};
}

inline GQCircuit circuit_from_json(const json& j, double unitarity_tol = 1e-10) {
    GQCircuit c;
    try {
        c.N = j.at("N").get<std::size_t>();
        c.L = j.at("L").get<std::size_t>();
        const auto n = static_cast<Eigen::Index>(c.N);
        for (const auto& m : j.at("unitaries")) {
            if (m.size() != c.N) throw invalid_input("unitary has the wrong number of rows");
            UnitaryMatrix U(n, n);
            for (Eigen::Index r = 0; r < n; ++r) {
                const auto& row = m.at(static_cast<std::size_t>(r));
                if (row.size() != c.N) throw invalid_input("unitary has the wrong number of columns");
                for (Eigen::Index k = 0; k < n; ++k) {
                    const auto& e = row.at(static_cast<std::size_t>(k));
                    U(r, k) = {e.at(0).get<double>(), e.at(1).get<double>()};
                }
            }
            c.unitaries.push_back(std::move(U));
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed circuit: ") + e.what());
    }
    if (c.unitaries.size() != c.L + 1) throw invalid_input("circuit must hold L+1 unitaries");
    for (std::size_t i = 0; i < c.unitaries.size(); ++i)
        if (unitarity_error(c.unitaries[i]) > unitarity_tol)
            throw invalid_input("matrix " + std::to_string(i) + " of the circuit is not unitary");
    return c;
}

// --- reports ---------------------------------------------------------------

inline json to_json(const VerificationReport& r) {
    return json{{"max_error", r.max_error}, {"pass", r.pass}, {"grid_size", r.grid_size}};
}

inline json to_json(const RiskReport& r) {
    return json{{"N", r.N}, {"estimates", r.estimates}, {"weights", r.weights}, {"dx", r.dx}, {"ratio", r.ratio}};
}

inline json to_json(const RyTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row{{"L", r.L}, {"y", r.y}, {"r", r.r}, {"scaled", r.scaled}};
        if (!r.ok()) row["status"] = "failed: " + r.status;
        rows.push_back(std::move(row));
    }
    return json{{"rows", rows}};
}

inline json to_json(const std::vector<RiskRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) out.push_back({{"n", r.n}, {"N", r.N}, {"dx", r.dx}, {"ratio", r.ratio}});
    return json{{"rows", out}};
}

// --- CSV -------------------------------------------------------------------

/// Header `L,y,r,scaled`; a trailing `status` column appears only when some
/// row failed.
inline void write_csv(std::ostream& os, const RyTable& t) {
    const bool marks = !t.all_ok();
    os << "L,y,r,scaled" << (marks ? ",status" : "") << '\n';
    for (const auto& row : t.rows) {
        os << row.L << ',' << format_real(row.y) << ',' << format_real(row.r) << ',' << format_real(row.scaled);
        if (marks) os << ',' << (row.ok() ? "ok" : "failed: " + row.status);
        os << '\n';
    }
}

inline void write_csv(std::ostream& os, const std::vector<RiskRow>& rows) {
    os << "n,N,dx,ratio\n";
    for (const auto& r : rows) os << r.n << ',' << r.N << ',' << format_real(r.dx) << ',' << format_real(r.ratio) << '\n';
}

inline void write_csv(std::ostream& os, const VerificationReport& rep) {
    os << "theta,x,k,simulated,target,abs_error\n";
    for (const auto& r : rep.rows)
        os << format_real(r.theta) << ',' << format_real(r.x) << ',' << r.k << ',' << format_real(r.simulated) << ','
           << format_real(r.target) << ',' << format_real(r.abs_error) << '\n';
}

}  // namespace gqae
