// Command-line front end: wires zero acquisition to every analysis and emits
// plot-ready CSV datasets. Exit codes: 0 success, 1 validation failure,
// 2 tolerance or verification failure.

#pragma once

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "zetaq/circuit.hpp"
#include "zetaq/csv.hpp"
#include "zetaq/entanglement.hpp"
#include "zetaq/qpe.hpp"
#include "zetaq/state.hpp"
#include "zetaq/unitary.hpp"
#include "zetaq/zeros.hpp"
#include "zetaq/zeros_table.hpp"

namespace zetaq::cli {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_tolerance = 2;

struct RunConfig {
    std::string zeros_file;       // empty: embedded or computed
    std::size_t zero_offset = 1;  // starting ordinal
    std::size_t count = 0;        // k, when set by --count
    int qubits = 0;               // n, when set by --qubits
    int t_bits = 12;
    double tolerance = 1e-8;
    std::string out_path;         // empty: stdout
    std::string measure = "both"; // vn | linear | both
    std::string spacing_variant = "density";
};

namespace detail {

inline std::string env_zeros_file() {
    const char* env = std::getenv("ZETA_ZEROS_FILE");
    return env ? std::string(env) : std::string();
}

// Source precedence: explicit/env file, then the embedded table when it
// suffices, then the built-in zero finder.
inline ZeroTable resolve_zeros(const RunConfig& cfg, std::size_t count) {
    const std::size_t needed = cfg.zero_offset - 1 + count;
    const std::string file = !cfg.zeros_file.empty() ? cfg.zeros_file : env_zeros_file();
    ZeroTable table;
    if (!file.empty()) {
        table = load_zeros_file(file, needed);
        if (table.size() < needed)
            throw std::runtime_error("zeros file '" + file + "' holds only " +
                                     std::to_string(table.size()) + " zeros, need " +
                                     std::to_string(needed));
    } else if (needed <= embedded_zero_ordinates.size()) {
        table = embedded_zeros(needed);
    } else {
        ScanReport report;
        table = compute_first_zeros(needed, &report);
        if (report.count_suspicious)
            std::cerr << "warning: zero scan found " << report.found
                      << " zeros where the counting formula expects about " << report.expected
                      << "; a close pair may be missed\n";
    }
    return table.slice(cfg.zero_offset, count);
}

// Count-less table commands: an explicit --count wins, a file source means
// the whole file, otherwise fall back to a default.
inline ZeroTable resolve_zeros_default(const RunConfig& cfg, std::size_t fallback) {
    if (cfg.count) return resolve_zeros(cfg, cfg.count);
    const std::string file = !cfg.zeros_file.empty() ? cfg.zeros_file : env_zeros_file();
    if (!file.empty()) {
        const ZeroTable table = load_zeros_file(file);
        if (table.size() < cfg.zero_offset)
            throw std::runtime_error("zeros file '" + file + "' holds only " +
                                     std::to_string(table.size()) + " zeros, offset is " +
                                     std::to_string(cfg.zero_offset));
        return table.slice(cfg.zero_offset, table.size() - cfg.zero_offset + 1);
    }
    return resolve_zeros(cfg, fallback);
}

inline void emit(const csv::Table& table, const RunConfig& cfg) {
    if (cfg.out_path.empty()) {
        table.write(std::cout);
    } else {
        table.write_file(cfg.out_path);
    }
}

inline void add_source_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--zeros-file", cfg.zeros_file,
                    "zero table path (default: $ZETA_ZEROS_FILE, else embedded/computed)");
    cmd->add_option("--zero-offset", cfg.zero_offset, "starting ordinal, 1-based")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", cfg.out_path, "output CSV path (default: stdout)");
}

inline std::size_t qubit_dim(int n) {
    if (n < 1 || n > 16) throw std::runtime_error("--qubits must be in 1..16");
    return std::size_t{1} << n;
}

} // namespace detail

inline int run_zeros(const RunConfig& cfg, std::optional<double> t_lo, std::optional<double> t_hi) {
    ZeroTable table;
    if (t_lo || t_hi) {
        if (!t_lo || !t_hi) throw std::runtime_error("--t-lo and --t-hi must be given together");
        ScanReport report;
        table = find_zeros_in_range(*t_lo, *t_hi, &report);
        if (report.count_suspicious)
            std::cerr << "warning: found " << report.found << " zeros but the counting formula "
                      << "expects about " << report.expected << "; a close pair may be missed\n";
    } else {
        table = detail::resolve_zeros_default(cfg, 100);
    }
    csv::Table out({"index", "b"});
    for (const ZetaZero& z : table) out.push_row({csv::cell(static_cast<long long>(z.index)), csv::cell(z.b)});
    detail::emit(out, cfg);
    return exit_ok;
}

inline int run_spectrum(const RunConfig& cfg) {
    const ZeroTable zeros = detail::resolve_zeros_default(cfg, 16);
    const RiemannUnitary u = build_unitary(zeros);
    const std::vector<PhaseAngle> phases = eigenphases(u);
    csv::Table out({"j", "b", "theta"});
    for (std::size_t j = 1; j <= zeros.size(); ++j)
        out.push_row({csv::cell(j), csv::cell(zeros.b(j)), csv::cell(phases[j - 1].radians)});
    detail::emit(out, cfg);
    return exit_ok;
}

inline int run_spacing(const RunConfig& cfg) {
    const ZeroTable zeros = detail::resolve_zeros_default(cfg, 100);
    const SpacingVariant variant = cfg.spacing_variant == "literal" ? SpacingVariant::Literal
                                                                    : SpacingVariant::Density;
    const auto exact = spacing_series(zeros);
    const auto analytic = spacing_analytic(zeros, variant);
    csv::Table out({"theta", "delta_exact", "delta_analytic", "variant"});
    for (std::size_t i = 0; i < exact.size(); ++i)
        out.push_row({csv::cell(exact[i].theta.radians), csv::cell(exact[i].delta),
                      csv::cell(analytic[i].delta), cfg.spacing_variant});
    detail::emit(out, cfg);
    return exit_ok;
}

inline int run_state(const RunConfig& cfg, const std::string& method) {
    const ZeroTable zeros = detail::resolve_zeros(cfg, detail::qubit_dim(cfg.qubits));
    const StateVector psi = riemann_state(
        zeros, method == "apply" ? StateMethod::ApplyUnitary : StateMethod::ClosedForm);
    csv::Table out({"basis_index", "re", "im", "prob"});
    for (std::size_t i = 0; i < psi.dim(); ++i)
        out.push_row({csv::cell(i), csv::cell(psi[i].real()), csv::cell(psi[i].imag()),
                      csv::cell(std::norm(psi[i]))});
    detail::emit(out, cfg);
    return exit_ok;
}

inline int run_entanglement(const RunConfig& cfg, int n_min, int n_max) {
    const ZeroTable zeros = detail::resolve_zeros(cfg, detail::qubit_dim(n_max));
    const auto rows = entanglement_sweep(zeros, n_min, n_max);
    std::vector<std::string> columns{"n_qubits"};
    const bool vn = cfg.measure != "linear";
    const bool lin = cfg.measure != "vn";
    if (vn) columns.push_back("E1_vn");
    if (lin) columns.push_back("E1_lin");
    if (vn) columns.push_back("E2_vn");
    if (lin) columns.push_back("E2_lin");
    csv::Table out(columns);
    for (const EntanglementRow& r : rows) {
        std::vector<std::string> row{csv::cell(r.n_qubits)};
        if (vn) row.push_back(csv::cell(r.e1_von_neumann));
        if (lin) row.push_back(csv::cell(r.e1_linear));
        if (vn) row.push_back(csv::cell(r.e2_von_neumann));
        if (lin) row.push_back(csv::cell(r.e2_linear));
        out.push_row(std::move(row));
    }
    detail::emit(out, cfg);
    return exit_ok;
}

inline int run_fidelity(const RunConfig& cfg, int n_min, int n_max) {
    const ZeroTable zeros = detail::resolve_zeros(cfg, detail::qubit_dim(n_max));
    csv::Table out({"n_qubits", "fidelity", "closed_form"});
    for (int n = n_min; n <= n_max; ++n) {
        const ZeroTable prefix = zeros.prefix(std::size_t{1} << n);
        const double direct = fidelity(riemann_state(prefix), hadamard_state(n));
        out.push_row({csv::cell(n), csv::cell(direct), csv::cell(fidelity_closed_form(prefix))});
    }
    detail::emit(out, cfg);
    return exit_ok;
}

inline int run_circuit(const RunConfig& cfg, bool verify, bool probes) {
    const ZeroTable zeros = detail::resolve_zeros(cfg, detail::qubit_dim(cfg.qubits));
    const Circuit circuit = synthesize(zeros);
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
        out << serialize_circuit(circuit);
    } else if (!verify) {
        std::cout << serialize_circuit(circuit);
    }
    if (verify) {
        const VerifyMode mode = probes ? VerifyMode::Probes : VerifyMode::Auto;
        const VerificationReport report =
            verify_against_unitary(circuit, zeros, cfg.tolerance, mode);
        std::cout << "max deviation " << csv::cell(report.max_deviation) << " ("
                  << (report.dense_mode ? "dense" : "probes") << " mode, tolerance "
                  << csv::cell(report.tolerance) << ")\n";
        if (!report.passed) return exit_tolerance;
    }
    return exit_ok;
}

inline int run_estimate(const RunConfig& cfg, const std::string& target) {
    const ZeroTable zeros = detail::resolve_zeros(cfg, detail::qubit_dim(cfg.qubits));
    const PhaseEstimate est = target == "spacing-sum" ? estimate_spacing_sum(zeros, cfg.t_bits)
                                                      : estimate_theta_sum(zeros, cfg.t_bits);
    csv::Table out({"target", "t_bits", "estimate", "truth", "error"});
    out.push_row({target, csv::cell(cfg.t_bits), csv::cell(est.estimate), csv::cell(est.truth),
                  csv::cell(est.error)});
    detail::emit(out, cfg);
    const double resolution = two_pi / std::pow(2.0, cfg.t_bits);
    return est.error <= resolution ? exit_ok : exit_tolerance;
}

// Parses argv and runs one command.
inline int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Riemannian unitary toolkit: zeta zeros, spectra, states, "
                 "entanglement, circuits, and phase estimation"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* zeros_cmd = app.add_subcommand("zeros", "acquire or compute a zero table");
    detail::add_source_options(zeros_cmd, cfg);
    zeros_cmd->add_option("--count,-k", cfg.count, "number of zeros")->check(CLI::PositiveNumber);
    std::optional<double> t_lo, t_hi;
    zeros_cmd->add_option("--t-lo", t_lo, "scan window lower edge (>= 10)");
    zeros_cmd->add_option("--t-hi", t_hi, "scan window upper edge");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenphases of the Riemannian unitary");
    detail::add_source_options(spectrum_cmd, cfg);
    spectrum_cmd->add_option("--count,-k", cfg.count, "number of zeros")->check(CLI::PositiveNumber);

    auto* spacing_cmd = app.add_subcommand("spacing", "consecutive eigenphase spacings (figure 1 data)");
    detail::add_source_options(spacing_cmd, cfg);
    spacing_cmd->add_option("--count,-k", cfg.count, "number of zeros")->check(CLI::PositiveNumber);
    spacing_cmd->add_option("--spacing-variant", cfg.spacing_variant, "density | literal")
        ->check(CLI::IsMember({"density", "literal"}));

    auto* state_cmd = app.add_subcommand("state", "Riemannian state amplitudes");
    detail::add_source_options(state_cmd, cfg);
    state_cmd->add_option("--qubits,-n", cfg.qubits, "qubit count (k = 2^n)")->required();
    std::string method = "closed";
    state_cmd->add_option("--method", method, "closed | apply")
        ->check(CLI::IsMember({"closed", "apply"}));

    auto* ent_cmd = app.add_subcommand("entanglement", "averaged bipartite entanglement sweep (figure 2 data)");
    detail::add_source_options(ent_cmd, cfg);
    int n_min = 2, n_max = 10;
    ent_cmd->add_option("--n-min", n_min, "smallest qubit count");
    ent_cmd->add_option("--n-max", n_max, "largest qubit count");
    ent_cmd->add_option("--measure", cfg.measure, "vn | linear | both")
        ->check(CLI::IsMember({"vn", "linear", "both"}));

    auto* fid_cmd = app.add_subcommand("fidelity", "fidelity to the disentangled state (figure 3 data)");
    detail::add_source_options(fid_cmd, cfg);
    int f_min = 2, f_max = 10;
    fid_cmd->add_option("--n-min", f_min, "smallest qubit count");
    fid_cmd->add_option("--n-max", f_max, "largest qubit count");

    auto* circ_cmd = app.add_subcommand("circuit", "synthesize the quantum circuit; optionally verify");
    detail::add_source_options(circ_cmd, cfg);
    circ_cmd->add_option("--qubits,-n", cfg.qubits, "qubit count (k = 2^n)")->required();
    bool verify = false, probes = false;
    circ_cmd->add_flag("--verify", verify, "compare the circuit against the unitary");
    circ_cmd->add_flag("--probes", probes, "force probe-state verification");
    circ_cmd->add_option("--tolerance", cfg.tolerance, "verification tolerance");

    auto* est_cmd = app.add_subcommand("estimate", "phase estimation of theta sums");
    detail::add_source_options(est_cmd, cfg);
    est_cmd->add_option("--qubits,-n", cfg.qubits, "qubit count (k = 2^n)")->required();
    est_cmd->add_option("--t-bits", cfg.t_bits, "ancilla bits")->check(CLI::Range(1, 16));
    std::string target = "theta-sum";
    est_cmd->add_option("--target", target, "theta-sum | spacing-sum")
        ->check(CLI::IsMember({"theta-sum", "spacing-sum"}));

    try {
        app.parse(argc, argv);
        if (zeros_cmd->parsed()) return run_zeros(cfg, t_lo, t_hi);
        if (spectrum_cmd->parsed()) return run_spectrum(cfg);
        if (spacing_cmd->parsed()) return run_spacing(cfg);
        if (state_cmd->parsed()) return run_state(cfg, method);
        if (ent_cmd->parsed()) return run_entanglement(cfg, n_min, n_max);
        if (fid_cmd->parsed()) return run_fidelity(cfg, f_min, f_max);
        if (circ_cmd->parsed()) return run_circuit(cfg, verify, probes);
        if (est_cmd->parsed()) return run_estimate(cfg, target);
        return exit_validation;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
}

} // namespace zetaq::cli
