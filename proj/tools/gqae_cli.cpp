// gqae: lower-bound sweeps, sine-state QPE risk, circuit synthesis and
// verification from the command line.
//
// Exit codes: 0 success, 1 usage or I/O, 2 numerical failure, 3 verification
// failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gqae/gqae.hpp"

namespace {

using namespace gqae;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;
constexpr int exit_verify = 3;

struct usage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_failure("cannot open " + path + " for writing");
    out << text;
    if (!out) throw usage_failure("failed writing " + path);
}

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_failure("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw usage_failure(path + ": " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class T>
std::string render(const T& table, const std::string& format) {
    if (format == "json") return dump(to_json(table));
    std::ostringstream os;
    write_csv(os, table);
    return os.str();
}

// --- bound -----------------------------------------------------------------

struct BoundArgs {
    std::size_t lmax = 256;
    std::size_t ygrid = 101;
    std::optional<double> y;
    std::vector<std::size_t> ls;
    std::string output;
    std::string format = "csv";
};

/// Powers of two up to lmax, plus lmax itself.
std::vector<std::size_t> default_ls(std::size_t lmax) {
    std::vector<std::size_t> ls;
    for (std::size_t L = 1; L < lmax; L *= 2) ls.push_back(L);
    ls.push_back(lmax);
    return ls;
}

int cmd_bound(const BoundArgs& a) {
    if (a.lmax < 1 || a.lmax > 512) throw usage_failure("--lmax must lie in [1, 512]");
    if (a.ygrid < 1 || (!a.y && a.ygrid < 3)) throw usage_failure("--ygrid must be at least 3 (at least 1 with --y)");
    std::vector<double> ys;
    if (a.y) {
        if (!(*a.y > 0.0 && *a.y < 1.0)) throw usage_failure("--y must lie in (0, 1)");
        ys.push_back(*a.y);
    } else {
        for (std::size_t i = 0; i < a.ygrid; ++i) ys.push_back(double(i + 1) / double(a.ygrid + 1));
    }
    auto ls = a.ls.empty() ? default_ls(a.lmax) : a.ls;
    for (auto L : ls)
        if (L < 1 || L > a.lmax) throw usage_failure("--ls entries must lie in [1, lmax]");
    const auto table = sweep_ry(ls, ys);
    write_file(a.output, render(table, a.format));
    if (!table.all_ok()) {
        std::cerr << "bound: conditioning failure in some rows; see the status column\n";
        return exit_numerical;
    }
    return exit_ok;
}

// --- qpe-risk --------------------------------------------------------------

struct RiskArgs {
    std::size_t nmin = 1;
    std::size_t nmax = 10;
    std::string output;
    std::string format = "csv";
};

int cmd_qpe_risk(const RiskArgs& a) {
    if (a.nmax > 10 || a.nmin < 1 || a.nmin > a.nmax) throw usage_failure("need 1 <= --nmin <= --nmax <= 10");
    write_file(a.output, render(sweep_risk(a.nmin, a.nmax), a.format));
    return exit_ok;
}

// --- synthesize ------------------------------------------------------------

struct SynthArgs {
    std::optional<std::size_t> sine_qpe;
    std::string input;
    std::optional<std::size_t> L;
    std::string output;
    std::string target_out;
    std::string completion_out;
};

int cmd_synthesize(const SynthArgs& a) {
    if (a.sine_qpe.has_value() == !a.input.empty()) throw usage_failure("give exactly one of --sine-qpe and --input");
    OutcomeSet set;
    if (a.sine_qpe) {
        if (*a.sine_qpe < 2) throw usage_failure("--sine-qpe needs N >= 2");
        set = qpe_outcome_polys(*a.sine_qpe);
    } else {
        try {
            set = outcome_set_from_json(read_json(a.input));
            validate_outcome_set(set);
        } catch (const invalid_input& e) {
            throw usage_failure(a.input + ": " + e.what());
        } catch (const basis_error& e) {
            throw usage_failure(a.input + ": " + e.what());
        }
    }
    const std::size_t L = a.L.value_or(set.degree_bound);
    if (!a.target_out.empty()) write_file(a.target_out, dump(to_json(set)));

    CompletionSet cs;
    GQCircuit circ;
    double completion_res = 0.0, synthesis_res = 0.0;
    try {
        cs = complete_set(set, L);
        completion_res = completion_residual(cs);
        circ = synthesize(cs);
        synthesis_res = round_trip_residual(circ, set);
    } catch (const error& e) {
        std::cerr << "synthesize: " << e.what() << "\n";
        return exit_numerical;
    }
    if (!a.completion_out.empty()) write_file(a.completion_out, dump(to_json(cs)));
    write_file(a.output, dump(to_json(circ)));
    std::cout << "N " << circ.N << "\nL " << circ.L << "\ncompletion residual " << format_real(completion_res)
              << "\nsynthesis residual " << format_real(synthesis_res) << "\n";
    return exit_ok;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string circuit;
    std::string target;
    std::size_t grid = 129;
    double tol = 1e-8;
    std::size_t quad_nodes = 0;
    std::string output;
    std::string csv;
};

int cmd_verify(const VerifyArgs& a) {
    if (a.tol < 0.0) throw usage_failure("--tol must be nonnegative");
    if (a.grid < 2) throw usage_failure("--grid must be at least 2");
    GQCircuit circ;
    OutcomeSet target;
    try {
        circ = circuit_from_json(read_json(a.circuit));
        target = outcome_set_from_json(read_json(a.target));
    } catch (const error& e) {
        throw usage_failure(e.what());
    }
    if (target.N != circ.N || target.polys.size() != circ.N)
        throw usage_failure("circuit has N = " + std::to_string(circ.N) + " but target has N = " +
                            std::to_string(target.polys.size()));
    const std::size_t nodes = a.quad_nodes ? a.quad_nodes : std::max<std::size_t>(64, circ.L + 2);
    if (nodes < circ.L + 2) throw usage_failure("--quad-nodes must be at least L+2");

    const auto rep = verify_circuit(circ, target, a.grid, a.tol);
    const auto emp = empirical_risk(circ, nodes);
    const auto ana = risk(target);
    json j = to_json(rep);
    j["tol"] = a.tol;
    j["N"] = circ.N;
    j["L"] = circ.L;
    j["empirical_risk"] = to_json(emp);
    j["target_risk"] = to_json(ana);
    write_file(a.output, dump(j));
    if (!a.csv.empty()) {
        std::ostringstream os;
        write_csv(os, rep);
        write_file(a.csv, os.str());
    }
    std::cout << (rep.pass ? "pass" : "FAIL") << "\nmax error " << format_real(rep.max_error) << "\ndx "
              << format_real(emp.dx) << "\ntarget dx " << format_real(ana.dx) << "\n";
    return rep.pass ? exit_ok : exit_verify;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string circuit;
    std::vector<double> theta{0.0, std::numbers::pi / 2.0, std::numbers::pi};
    std::string output;
};

int cmd_simulate(const SimulateArgs& a) {
    GQCircuit circ;
    try {
        circ = circuit_from_json(read_json(a.circuit));
    } catch (const error& e) {
        throw usage_failure(e.what());
    }
    std::ostringstream os;
    os << "theta,x,k,probability\n";
    for (double t : a.theta) {
        const double c = std::cos(0.5 * t);
        const auto p = run_circuit(circ, t);
        for (std::size_t k = 0; k < p.size(); ++k)
            os << format_real(t) << ',' << format_real(c * c) << ',' << k << ',' << format_real(p[k]) << '\n';
    }
    write_file(a.output, os.str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized quantum amplitude estimation toolkit"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"csv", "json"};

    BoundArgs bound;
    auto* b = app.add_subcommand("bound", "Sweep the variance lower bound r(y) over L and y");
    b->add_option("--lmax", bound.lmax, "largest L; L runs over powers of two up to lmax")->capture_default_str();
    b->add_option("--ygrid", bound.ygrid, "number of interior y points i/(ygrid+1)")->capture_default_str();
    b->add_option("--y", bound.y, "single y value instead of the grid");
    b->add_option("--ls", bound.ls, "explicit list of L values")->delimiter(',');
    b->add_option("-o,--output", bound.output, "output table")->required();
    b->add_option("--format", bound.format)->check(CLI::IsMember(formats))->capture_default_str();

    RiskArgs riskargs;
    auto* q = app.add_subcommand("qpe-risk", "Bayesian risk of sine-state phase estimation, N = 2^n");
    q->add_option("--nmin", riskargs.nmin)->capture_default_str();
    q->add_option("--nmax", riskargs.nmax)->capture_default_str();
    q->add_option("-o,--output", riskargs.output, "output table")->required();
    q->add_option("--format", riskargs.format)->check(CLI::IsMember(formats))->capture_default_str();

    SynthArgs synth;
    auto* s = app.add_subcommand("synthesize", "Build a circuit whose outcome distribution matches a target set");
    s->add_option("--sine-qpe", synth.sine_qpe, "use the sine-state phase estimation set of size N");
    s->add_option("-i,--input", synth.input, "outcome set JSON");
    s->add_option("--L", synth.L, "number of queries (default: the set's degree bound)");
    s->add_option("-o,--output", synth.output, "circuit JSON")->required();
    s->add_option("--target-out", synth.target_out, "also write the target outcome set");
    s->add_option("--completion-out", synth.completion_out, "also write the completion polynomials");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Simulate a circuit and compare against a target outcome set");
    v->add_option("--circuit", ver.circuit)->required();
    v->add_option("--target", ver.target)->required();
    v->add_option("--grid", ver.grid, "Chebyshev nodes in x")->capture_default_str();
    v->add_option("--tol", ver.tol)->capture_default_str();
    v->add_option("--quad-nodes", ver.quad_nodes, "Gauss-Legendre nodes for the risk (default max(64, L+2))");
    v->add_option("-o,--output", ver.output, "report JSON")->required();
    v->add_option("--csv", ver.csv, "per-point comparison table");

    SimulateArgs sim;
    auto* m = app.add_subcommand("simulate", "Dump outcome distributions of a circuit");
    m->add_option("--circuit", sim.circuit)->required();
    m->add_option("--theta", sim.theta, "angles in [0, pi]")->delimiter(',')->capture_default_str();
    m->add_option("-o,--output", sim.output, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*b) return cmd_bound(bound);
        if (*q) return cmd_qpe_risk(riskargs);
        if (*s) return cmd_synthesize(synth);
        if (*v) return cmd_verify(ver);
        if (*m) return cmd_simulate(sim);
    } catch (const usage_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_usage;
}
