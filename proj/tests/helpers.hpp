// Shared test utilities: independent high-precision oracles (Euler-Maclaurin
// zeta with a log-gamma theta, explicit-index partial trace, full-register
// QPE simulation), deterministic random instances, and a zero-table cache.
//
// Everything here is an independent verification path: none of it reuses the
// library's production evaluation routes beyond its public types.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "zetaq/common.hpp"
#include "zetaq/state.hpp"
#include "zetaq/zeros.hpp"

namespace oracle {

using ld = long double;
using cld = std::complex<ld>;

inline constexpr ld pi_ld = 3.14159265358979323846264338327950288L;

// log Gamma by Stirling with Bernoulli corrections, shifting Re(z) up first.
inline cld log_gamma(cld z) {
    cld shift(0.0L, 0.0L);
    while (z.real() < 12.0L) {
        shift -= std::log(z);
        z += 1.0L;
    }
    static const ld bern[] = {1.0L / 12.0L,     -1.0L / 360.0L,      1.0L / 1260.0L,
                              -1.0L / 1680.0L,  1.0L / 1188.0L,      -691.0L / 360360.0L,
                              1.0L / 156.0L,    -3617.0L / 122400.0L};
    cld res = (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2.0L * pi_ld);
    cld zp = z;
    const cld z2 = z * z;
    for (ld b : bern) {
        res += b / zp;
        zp *= z2;
    }
    return res + shift;
}

// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) ln pi, no asymptotic series.
inline ld theta(ld t) {
    return log_gamma(cld(0.25L, t / 2.0L)).imag() - (t / 2.0L) * std::log(pi_ld);
}

// zeta(1/2 + it) by Euler-Maclaurin in long double.
inline cld zeta_half_line(ld t) {
    const cld s(0.5L, t);
    const int big_n = static_cast<int>(std::max<ld>(30.0L, 1.3L * t)) + 10;
    cld sum(0.0L, 0.0L);
    for (int n = 1; n <= big_n; ++n) sum += std::exp(-s * std::log(static_cast<ld>(n)));
    const cld ln_n = std::log(cld(static_cast<ld>(big_n), 0.0L));
    sum += std::exp((1.0L - s) * ln_n) / (s - 1.0L);
    sum -= 0.5L * std::exp(-s * ln_n);
    static const ld bern[] = {1.0L / 12.0L,
                              -1.0L / 720.0L,
                              1.0L / 30240.0L,
                              -1.0L / 1209600.0L,
                              1.0L / 47900160.0L,
                              -691.0L / 1307674368000.0L,
                              1.0L / 74724249600.0L};
    cld poch = s;
    cld n_pow = std::exp((-s - 1.0L) * ln_n);
    for (int k = 1; k <= 7; ++k) {
        sum += bern[k - 1] * poch * n_pow;
        poch *= (s + static_cast<ld>(2 * k - 1)) * (s + static_cast<ld>(2 * k));
        n_pow /= std::exp(2.0L * ln_n);
    }
    return sum;
}

// Z(t) = e^{i theta(t)} zeta(1/2 + it); real up to rounding.
inline double z_function(double t) {
    const cld z = std::exp(cld(0.0L, theta(static_cast<ld>(t)))) * zeta_half_line(static_cast<ld>(t));
    return static_cast<double>(z.real());
}

// Reduced density matrix by explicit index summation over every entry of
// |psi><psi| (the 4^n brute-force route).
inline Eigen::MatrixXcd partial_trace(const zetaq::StateVector& psi, std::uint32_t keep_mask) {
    const int n = psi.n_qubits();
    std::vector<int> kept, traced;
    for (int q = 0; q < n; ++q)
        ((keep_mask >> q) & 1u ? kept : traced).push_back(q);
    const auto sub_index = [&](std::size_t i, const std::vector<int>& qubits) {
        std::size_t v = 0;
        for (std::size_t a = 0; a < qubits.size(); ++a)
            v |= static_cast<std::size_t>((i >> (n - 1 - qubits[a])) & 1u)
                 << (qubits.size() - 1 - a);
        return v;
    };
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << kept.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < psi.dim(); ++i)
        for (std::size_t j = 0; j < psi.dim(); ++j)
            if (sub_index(i, traced) == sub_index(j, traced))
                rho(static_cast<Eigen::Index>(sub_index(i, kept)),
                    static_cast<Eigen::Index>(sub_index(j, kept))) += psi[i] * std::conj(psi[j]);
    return rho;
}

// Full phase-estimation circuit over t ancilla qubits and the system register:
// Hadamards, controlled powers of `op`, inverse Fourier transform, marginal
// ancilla distribution. No eigenvector assumption.
inline std::vector<double> qpe_full_simulation(const Eigen::MatrixXcd& op,
                                               const Eigen::VectorXcd& input, int t_bits) {
    const std::size_t outcomes = std::size_t{1} << t_bits;
    const auto k = input.size();
    // controlled powers op^{2^j}
    std::vector<Eigen::MatrixXcd> powers(static_cast<std::size_t>(t_bits));
    powers[0] = op;
    for (int j = 1; j < t_bits; ++j) powers[j] = powers[j - 1] * powers[j - 1];
    // register after Hadamards and controlled powers: row x = op^x input / sqrt(2^t)
    Eigen::MatrixXcd reg(outcomes, k);
    const double scale = 1.0 / std::sqrt(static_cast<double>(outcomes));
    for (std::size_t x = 0; x < outcomes; ++x) {
        Eigen::VectorXcd w = input;
        for (int j = 0; j < t_bits; ++j)
            if ((x >> j) & 1u) w = powers[j] * w;
        reg.row(static_cast<Eigen::Index>(x)) = scale * w.transpose();
    }
    // inverse Fourier transform over the ancilla index
    Eigen::MatrixXcd ft(outcomes, outcomes);
    for (std::size_t m = 0; m < outcomes; ++m)
        for (std::size_t x = 0; x < outcomes; ++x)
            ft(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(x)) =
                scale * std::exp(zetaq::complex(0.0, -zetaq::two_pi * static_cast<double>(m) *
                                                          static_cast<double>(x) /
                                                          static_cast<double>(outcomes)));
    const Eigen::MatrixXcd out = ft * reg;
    std::vector<double> probs(outcomes);
    for (std::size_t m = 0; m < outcomes; ++m)
        probs[m] = out.row(static_cast<Eigen::Index>(m)).squaredNorm();
    return probs;
}

} // namespace oracle

namespace testutil {

// Deterministic normalized random state.
inline zetaq::StateVector random_state(zetaq::SplitMix64& rng, int n_qubits) {
    std::vector<zetaq::complex> amps(std::size_t{1} << n_qubits);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = zetaq::complex(rng.symmetric(), rng.symmetric());
        norm2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= scale;
    return zetaq::StateVector(n_qubits, std::move(amps));
}

// Synthetic but valid zero table (b > 6, strictly increasing), for scale and
// property tests that do not need true zeros.
inline zetaq::ZeroTable synthetic_zero_table(zetaq::SplitMix64& rng, std::size_t k) {
    std::vector<zetaq::ZetaZero> zeros;
    zeros.reserve(k);
    double b = 8.0 + 10.0 * rng.uniform();
    for (std::size_t j = 0; j < k; ++j) {
        b += 0.25 + 2.0 * rng.uniform();
        zeros.push_back({0, b});
    }
    return zetaq::ZeroTable(std::move(zeros), zetaq::ZeroSource::computed(0, 0));
}

// Cache of true leading zeros, grown on demand; shared across test cases.
inline const zetaq::ZeroTable& first_zeros(std::size_t count) {
    static zetaq::ZeroTable cache;
    if (cache.size() < count) cache = zetaq::compute_first_zeros(count);
    return cache;
}

} // namespace testutil
