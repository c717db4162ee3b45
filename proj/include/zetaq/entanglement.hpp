// Bipartite entanglement of pure n-qubit states: partial trace over arbitrary
// qubit subsets, von Neumann and linear entropies, and the two averaged
// measures (over all bipartitions, and over single-qubit bipartitions).
//
// Entropy is measured in bits (log base 2), so a maximally mixed qubit
// scores 1. Pure-state symmetry lets every bipartition be evaluated on its
// smaller side.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include "zetaq/common.hpp"
#include "zetaq/state.hpp"
#include "zetaq/zeros.hpp"

namespace zetaq {

// A split of n qubits: bit i of `mask` set means qubit i is retained.
struct Bipartition {
    int n = 0;
    std::uint32_t mask = 0;

    int retained_count() const { return std::popcount(mask); }
    std::uint32_t complement() const { return ~mask & ((std::uint32_t{1} << n) - 1); }
};

// All unordered splits exactly once: masks 1 .. 2^{n-1}-1, i.e. the side not
// containing the last qubit, in ascending mask order.
inline std::vector<Bipartition> enumerate_bipartitions(int n) {
    if (n < 2) throw std::invalid_argument("enumerate_bipartitions: need n >= 2");
    std::vector<Bipartition> out;
    out.reserve((std::size_t{1} << (n - 1)) - 1);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << (n - 1)); ++mask)
        out.push_back({n, mask});
    return out;
}

// The n splits whose retained side is a single qubit.
inline std::vector<Bipartition> single_qubit_bipartitions(int n) {
    if (n < 2) throw std::invalid_argument("single_qubit_bipartitions: need n >= 2");
    std::vector<Bipartition> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) out.push_back({n, std::uint32_t{1} << q});
    return out;
}

// Reduced state over a qubit subset: Hermitian, unit trace, PSD.
struct DensityMatrix {
    Eigen::MatrixXcd entries;

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }

    double hermiticity_error() const {
        return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    }
    double trace_error() const { return std::abs(entries.trace() - complex(1.0, 0.0)); }
};

namespace detail {

// Basis-index fragments for a qubit subset: table[v] scatters the compact
// value v (qubits of the subset in ascending order, first = most significant)
// into its bit positions of the full basis index.
inline std::vector<std::size_t> scatter_table(std::uint32_t qubit_mask, int n) {
    std::vector<int> qubits;
    for (int q = 0; q < n; ++q)
        if (qubit_mask & (std::uint32_t{1} << q)) qubits.push_back(q);
    const int m = static_cast<int>(qubits.size());
    std::vector<std::size_t> table(std::size_t{1} << m);
    for (std::size_t v = 0; v < table.size(); ++v) {
        std::size_t idx = 0;
        for (int a = 0; a < m; ++a)
            if ((v >> (m - 1 - a)) & 1u) idx |= std::size_t{1} << (n - 1 - qubits[static_cast<std::size_t>(a)]);
        table[v] = idx;
    }
    return table;
}

// Amplitudes regrouped as a 2^m x 2^{n-m} matrix: rows indexed by the
// retained qubits' bits, columns by the traced qubits' bits.
inline Eigen::MatrixXcd reshape_amplitudes(const StateVector& state, std::uint32_t keep_mask) {
    const int n = state.n_qubits();
    const auto rows = scatter_table(keep_mask, n);
    const auto cols = scatter_table(~keep_mask & ((std::uint32_t{1} << n) - 1), n);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows.size(); ++r)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state[rows[r] | cols[c]];
    return m;
}

} // namespace detail

// rho over the retained qubits of a pure state, by regrouping amplitudes
// into M and forming M M^dagger.
inline DensityMatrix partial_trace(const StateVector& state, const Bipartition& keep) {
    if (keep.n != state.n_qubits())
        throw std::invalid_argument("partial_trace: bipartition does not match the state");
    const int m = keep.retained_count();
    if (m < 1 || m > keep.n - 1)
        throw std::invalid_argument("partial_trace: retained side must be a proper nonempty subset");
    const Eigen::MatrixXcd grouped = detail::reshape_amplitudes(state, keep.mask);
    return DensityMatrix{grouped * grouped.adjoint()};
}

namespace detail {

inline void require_hermitian(const DensityMatrix& rho) {
    if (rho.hermiticity_error() > 1e-8)
        throw std::invalid_argument("density matrix is not Hermitian within tolerance");
}

inline std::vector<double> clipped_spectrum(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries, Eigen::EigenvaluesOnly);
    std::vector<double> lambdas;
    lambdas.reserve(rho.dim());
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        lambdas.push_back(std::clamp(solver.eigenvalues()[i], 0.0, 1.0));
    return lambdas;
}

} // namespace detail

// -Tr[rho log2 rho] with 0 log 0 = 0; eigenvalues below 1e-14 count as zero.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    detail::require_hermitian(rho);
    double entropy = 0.0;
    for (double lambda : detail::clipped_spectrum(rho))
        if (lambda > 1e-14) entropy -= lambda * std::log2(lambda);
    return entropy;
}

// 2 (1 - Tr rho^2); Tr rho^2 is the squared Frobenius norm for Hermitian rho.
inline double linear_entropy(const DensityMatrix& rho) {
    detail::require_hermitian(rho);
    return 2.0 * (1.0 - rho.entries.squaredNorm());
}

enum class EntropyMeasure { VonNeumann, Linear };

namespace detail {

struct EntropyPair {
    double von_neumann = 0.0;
    double linear = 0.0;
};

// Entropy of the split, computed on the smaller side (pure-state symmetry).
inline EntropyPair bipartition_entropies(const StateVector& state, const Bipartition& split) {
    const std::uint32_t small_side =
        2 * split.retained_count() <= split.n ? split.mask : split.complement();
    const DensityMatrix rho = partial_trace(state, {split.n, small_side});
    EntropyPair out;
    out.linear = 2.0 * (1.0 - rho.entries.squaredNorm());
    for (double lambda : clipped_spectrum(rho))
        if (lambda > 1e-14) out.von_neumann -= lambda * std::log2(lambda);
    return out;
}

// Deterministic parallel map: slot i always receives fn(i); chunks are only
// a scheduling detail.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
    std::vector<T> results(count);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, count);
    if (workers < 2 || count < 8) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += workers) results[i] = fn(i);
        }));
    }
    for (auto& f : futures) f.get();
    return results;
}

inline EntropyPair average_over(const StateVector& state, const std::vector<Bipartition>& splits) {
    const auto values = parallel_map<EntropyPair>(
        splits.size(), [&](std::size_t i) { return bipartition_entropies(state, splits[i]); });
    EntropyPair sum;
    for (const EntropyPair& v : values) { // canonical order: bit-stable totals
        sum.von_neumann += v.von_neumann;
        sum.linear += v.linear;
    }
    const double inv = 1.0 / static_cast<double>(splits.size());
    return {sum.von_neumann * inv, sum.linear * inv};
}

} // namespace detail

// Average entropy over all 2^{n-1}-1 bipartitions.
inline double e1_average(const StateVector& state, EntropyMeasure measure) {
    const auto avg = detail::average_over(state, enumerate_bipartitions(state.n_qubits()));
    return measure == EntropyMeasure::VonNeumann ? avg.von_neumann : avg.linear;
}

// Average entropy over the n single-qubit bipartitions.
inline double e2_average(const StateVector& state, EntropyMeasure measure) {
    const auto avg = detail::average_over(state, single_qubit_bipartitions(state.n_qubits()));
    return measure == EntropyMeasure::VonNeumann ? avg.von_neumann : avg.linear;
}

// One row of the entanglement-versus-qubits dataset.
struct EntanglementRow {
    int n_qubits = 0;
    double e1_von_neumann = 0.0;
    double e1_linear = 0.0;
    double e2_von_neumann = 0.0;
    double e2_linear = 0.0;
};

// Both averages, both measures, for the Riemannian state on the first 2^n
// zeros, for each n in [n_min, n_max].
inline std::vector<EntanglementRow> entanglement_sweep(const ZeroTable& zeros,
                                                       int n_min, int n_max) {
    if (n_min < 2 || n_min > n_max)
        throw std::invalid_argument("entanglement_sweep: need 2 <= n_min <= n_max");
    if (zeros.size() < (std::size_t{1} << n_max))
        throw std::invalid_argument("entanglement_sweep: insufficient zeros (need " +
                                    std::to_string(std::size_t{1} << n_max) + ")");
    std::vector<EntanglementRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        const StateVector psi = riemann_state(zeros.prefix(std::size_t{1} << n));
        const auto e1 = detail::average_over(psi, enumerate_bipartitions(n));
        const auto e2 = detail::average_over(psi, single_qubit_bipartitions(n));
        rows.push_back({n, e1.von_neumann, e1.linear, e2.von_neumann, e2.linear});
    }
    return rows;
}

} // namespace zetaq
