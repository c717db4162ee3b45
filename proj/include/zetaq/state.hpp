// The Riemannian state and reference states over n qubits, the eigenbasis of
// the Riemannian unitary in canonical coordinates, fidelity, and the
// phase-sum asymptotics.
//
// Basis convention used everywhere: qubit 0 is the most significant bit of
// the basis index, so the basis reads |00..00>, |00..01>, ..., |11..11>.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "zetaq/common.hpp"
#include "zetaq/unitary.hpp"
#include "zetaq/zeros.hpp"

namespace zetaq {

// Unit-norm vector of 2^n complex amplitudes; immutable after construction.
class StateVector {
public:
    StateVector(int n_qubits, std::vector<complex> amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
        if (n_qubits_ < 1) throw std::invalid_argument("StateVector: need at least one qubit");
        if (amplitudes_.size() != (std::size_t{1} << n_qubits_))
            throw std::invalid_argument("StateVector: amplitude count must be 2^n");
        double norm2 = 0.0;
        for (const complex& a : amplitudes_) norm2 += std::norm(a);
        if (std::abs(norm2 - 1.0) > 1e-10)
            throw std::invalid_argument("StateVector: not normalized (|norm^2 - 1| = " +
                                        std::to_string(std::abs(norm2 - 1.0)) + ")");
    }

    static StateVector basis_state(int n_qubits, std::size_t index) {
        std::vector<complex> amps(std::size_t{1} << n_qubits, complex(0.0, 0.0));
        amps.at(index) = complex(1.0, 0.0);
        return StateVector(n_qubits, std::move(amps));
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const complex& operator[](std::size_t i) const { return amplitudes_[i]; }
    const std::vector<complex>& amplitudes() const { return amplitudes_; }

private:
    int n_qubits_;
    std::vector<complex> amplitudes_;
};

// Inner product <a|b>.
inline complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("inner_product: qubit count mismatch");
    complex sum(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) sum += std::conj(a[i]) * b[i];
    return sum;
}

// F = |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

// H^n |0..0>: every amplitude 1/sqrt(2^n).
inline StateVector hadamard_state(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("hadamard_state: need at least one qubit");
    const std::size_t k = std::size_t{1} << n_qubits;
    return StateVector(n_qubits,
                       std::vector<complex>(k, complex(1.0 / std::sqrt(static_cast<double>(k)), 0.0)));
}

// Eigenvectors of the Riemannian unitary in canonical coordinates:
// |psi_j> = e_{k-j} for j = 3..k, and (e_{k-2} +- e_{k-1})/sqrt(2) for
// j = 1, 2. Which sign carries theta_1 is resolved by applying the unitary,
// not by trusting any a-priori labeling.
class EigenbasisMap {
public:
    EigenbasisMap(std::size_t k, int orientation)
        : k_(k), n_(log2_exact(k)), orientation_(orientation) {
        if (k < 2) throw std::invalid_argument("EigenbasisMap: need k >= 2");
        if (orientation != 1 && orientation != -1)
            throw std::invalid_argument("EigenbasisMap: orientation must be +-1");
    }

    std::size_t k() const { return k_; }
    int n_qubits() const { return n_; }

    // +1 when |psi_1> = (e_{k-2} + e_{k-1})/sqrt(2).
    int orientation() const { return orientation_; }

    // Canonical expansion of |psi_j>, j = 1..k.
    StateVector eigenvector(std::size_t j) const {
        if (j < 1 || j > k_) throw std::out_of_range("EigenbasisMap: eigen-index out of range");
        std::vector<complex> amps(k_, complex(0.0, 0.0));
        const double s = 1.0 / std::sqrt(2.0);
        if (j == 1) {
            amps[k_ - 2] = s;
            amps[k_ - 1] = orientation_ * s;
        } else if (j == 2) {
            amps[k_ - 2] = s;
            amps[k_ - 1] = -orientation_ * s;
        } else {
            amps[k_ - j] = 1.0;
        }
        return StateVector(n_, std::move(amps));
    }

    // Coefficients c_j = <psi_j|v> for j = 1..k (returned 0-based); O(k).
    std::vector<complex> decompose(std::span<const complex> canonical) const {
        if (canonical.size() != k_) throw std::invalid_argument("EigenbasisMap::decompose: size");
        std::vector<complex> c(k_);
        const double s = 1.0 / std::sqrt(2.0);
        const double o = static_cast<double>(orientation_);
        c[0] = s * (canonical[k_ - 2] + o * canonical[k_ - 1]);
        c[1] = s * (canonical[k_ - 2] - o * canonical[k_ - 1]);
        for (std::size_t j = 3; j <= k_; ++j) c[j - 1] = canonical[k_ - j];
        return c;
    }

    // Inverse of decompose; O(k).
    std::vector<complex> reconstruct(std::span<const complex> coefficients) const {
        if (coefficients.size() != k_) throw std::invalid_argument("EigenbasisMap::reconstruct: size");
        std::vector<complex> v(k_);
        const double s = 1.0 / std::sqrt(2.0);
        const double o = static_cast<double>(orientation_);
        v[k_ - 2] = s * (coefficients[0] + coefficients[1]);
        v[k_ - 1] = o * s * (coefficients[0] - coefficients[1]);
        for (std::size_t j = 3; j <= k_; ++j) v[k_ - j] = coefficients[j - 1];
        return v;
    }

    // All eigenvectors as columns (tests and small oracles only).
    Eigen::MatrixXcd dense_columns(std::size_t max_dimension = 4096) const {
        if (k_ > max_dimension)
            throw std::invalid_argument("EigenbasisMap::dense_columns: k exceeds the dense cap");
        Eigen::MatrixXcd m(static_cast<Eigen::Index>(k_), static_cast<Eigen::Index>(k_));
        for (std::size_t j = 1; j <= k_; ++j) {
            const StateVector v = eigenvector(j);
            for (std::size_t i = 0; i < k_; ++i)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = v[i];
        }
        return m;
    }

private:
    std::size_t k_;
    int n_;
    int orientation_;
};

// Builds the eigenbasis for the unitary of the given zeros, resolving the
// block orientation numerically: the + vector must satisfy
// U (1,1)/sqrt(2) = e^{i theta_1} (1,1)/sqrt(2).
inline EigenbasisMap eigenbasis(const ZeroTable& zeros) {
    if (!is_power_of_two(zeros.size()))
        throw std::invalid_argument("eigenbasis: k must be a power of two");
    const RiemannUnitary u = build_unitary(zeros);
    const complex lambda_plus = u.block_eigenvalue_plus();
    const complex expected_theta1 = std::exp(complex(0.0, theta_exact(zeros.b(1)).radians));
    const int orientation = std::abs(lambda_plus - expected_theta1) < 1e-8 ? 1 : -1;
    // With the minus orientation the other block eigenvalue must carry theta_1.
    if (orientation == -1 &&
        std::abs(u.block_eigenvalue_minus() - expected_theta1) > 1e-8)
        throw std::runtime_error("eigenbasis: block eigenvalues match neither orientation");
    return EigenbasisMap(zeros.size(), orientation);
}

// (1/sqrt(k)) sum_j |psi_j>; in canonical coordinates the last two
// amplitudes collapse to (sqrt(2/k), 0).
inline StateVector uniform_eigen_superposition(const EigenbasisMap& map) {
    const std::size_t k = map.k();
    const complex c(1.0 / std::sqrt(static_cast<double>(k)), 0.0);
    std::vector<complex> coeff(k, c);
    return StateVector(map.n_qubits(), map.reconstruct(coeff));
}

enum class StateMethod {
    ClosedForm,   // evaluate the canonical-basis expansion directly
    ApplyUnitary, // apply the structured unitary to the uniform superposition
};

// The Riemannian state: the unitary applied to the uniform superposition of
// its eigenvectors. Both construction routes are exposed so their agreement
// is a first-class check.
inline StateVector riemann_state(const ZeroTable& zeros,
                                 StateMethod method = StateMethod::ClosedForm) {
    if (!is_power_of_two(zeros.size()) || zeros.size() < 2)
        throw std::invalid_argument("riemann_state: k must be a power of two, k >= 2");
    const std::size_t k = zeros.size();
    const int n = log2_exact(k);

    if (method == StateMethod::ApplyUnitary) {
        const RiemannUnitary u = build_unitary(zeros);
        std::vector<complex> amps = uniform_eigen_superposition(eigenbasis(zeros)).amplitudes();
        u.apply(amps);
        return StateVector(n, std::move(amps));
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    std::vector<complex> amps(k);
    for (std::size_t i = 0; i + 2 < k; ++i) {
        // basis index i carries theta_{k-i}
        amps[i] = scale * std::exp(complex(0.0, theta_exact(zeros.b(k - i)).radians));
    }
    const double theta1 = theta_exact(zeros.b(1)).radians;
    const double theta2 = theta_exact(zeros.b(2)).radians;
    const complex mean_phase = std::exp(complex(0.0, 0.5 * (theta1 + theta2)));
    const double half_gap = 0.5 * (theta2 - theta1);
    const double r2 = std::sqrt(2.0);
    amps[k - 2] = scale * r2 * mean_phase * std::cos(half_gap);
    // Sign fixed by the pinned |psi_1> = + orientation; the ApplyUnitary
    // route is the ground truth for it.
    amps[k - 1] = scale * r2 * mean_phase * complex(0.0, -1.0) * std::sin(half_gap);
    return StateVector(n, std::move(amps));
}

// |sum_j e^{i theta_j}|^2, evaluated exactly; approaches k^2 as the angles
// concentrate.
inline double phase_sum_sq(const ZeroTable& zeros) {
    if (zeros.empty()) throw std::invalid_argument("phase_sum_sq: need k >= 1");
    complex sum(0.0, 0.0);
    for (const ZetaZero& z : zeros) sum += std::exp(complex(0.0, theta_exact(z.b).radians));
    return std::norm(sum);
}

// Closed-form fidelity |<psi_R | H^n 0^n>|^2
//   = (1/k^2) |sum_j e^{i theta_j} - e^{i theta_2} + (sqrt(2)-1) e^{i theta_1}|^2,
// with indices matching the pinned eigenbasis orientation.
inline double fidelity_closed_form(const ZeroTable& zeros) {
    if (!is_power_of_two(zeros.size()) || zeros.size() < 2)
        throw std::invalid_argument("fidelity_closed_form: k must be a power of two, k >= 2");
    const std::size_t k = zeros.size();
    complex sum(0.0, 0.0);
    for (const ZetaZero& z : zeros) sum += std::exp(complex(0.0, theta_exact(z.b).radians));
    const complex e1 = std::exp(complex(0.0, theta_exact(zeros.b(1)).radians));
    const complex e2 = std::exp(complex(0.0, theta_exact(zeros.b(2)).radians));
    sum += -e2 + (std::sqrt(2.0) - 1.0) * e1;
    return std::norm(sum) / (static_cast<double>(k) * static_cast<double>(k));
}

} // namespace zetaq
