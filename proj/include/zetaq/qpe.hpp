// Operators over the eigenbasis of the Riemannian unitary (the cyclic
// translation T, the composed theta-sum and spacing operators) and a
// classical simulation of quantum phase estimation on their eigenphases.
//
// Every operator here is a permutation-with-phases over eigen-indices, so
// composition, powers, and application to states are O(k) or O(k log k);
// dense materialization exists for small oracles only.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "zetaq/common.hpp"
#include "zetaq/state.hpp"
#include "zetaq/unitary.hpp"
#include "zetaq/zeros.hpp"

namespace zetaq {

// op |psi_j> = phase_j |psi_{sigma(j)}>, with sigma a permutation; unitary by
// construction. Indices are 0-based internally (eigen-index j-1).
class EigenbasisOperator {
public:
    EigenbasisOperator(EigenbasisMap map, std::vector<std::size_t> sigma,
                       std::vector<complex> phases)
        : map_(std::move(map)), sigma_(std::move(sigma)), phases_(std::move(phases)) {
        if (sigma_.size() != map_.k() || phases_.size() != map_.k())
            throw std::invalid_argument("EigenbasisOperator: size mismatch");
        std::vector<bool> seen(sigma_.size(), false);
        for (std::size_t s : sigma_) {
            if (s >= sigma_.size() || seen[s])
                throw std::invalid_argument("EigenbasisOperator: sigma is not a permutation");
            seen[s] = true;
        }
    }

    static EigenbasisOperator identity(EigenbasisMap map) {
        const std::size_t k = map.k();
        std::vector<std::size_t> sigma(k);
        for (std::size_t j = 0; j < k; ++j) sigma[j] = j;
        return EigenbasisOperator(std::move(map), std::move(sigma),
                                  std::vector<complex>(k, complex(1.0, 0.0)));
    }

    std::size_t k() const { return map_.k(); }
    const EigenbasisMap& map() const { return map_; }
    const std::vector<std::size_t>& sigma() const { return sigma_; }
    const std::vector<complex>& phases() const { return phases_; }

    // Phase acquired by |psi_j> (1-based), only defined when sigma fixes j.
    complex eigenvalue_on(std::size_t j) const {
        if (j < 1 || j > k()) throw std::out_of_range("EigenbasisOperator: eigen-index");
        if (sigma_[j - 1] != j - 1)
            throw std::invalid_argument("EigenbasisOperator: |psi_j> is not an eigenvector");
        return phases_[j - 1];
    }

    // this * other (apply `other` first).
    EigenbasisOperator compose(const EigenbasisOperator& other) const {
        if (k() != other.k()) throw std::invalid_argument("EigenbasisOperator: size mismatch");
        std::vector<std::size_t> sigma(k());
        std::vector<complex> phases(k());
        for (std::size_t j = 0; j < k(); ++j) {
            const std::size_t mid = other.sigma_[j];
            sigma[j] = sigma_[mid];
            phases[j] = other.phases_[j] * phases_[mid];
        }
        return EigenbasisOperator(map_, std::move(sigma), std::move(phases));
    }

    EigenbasisOperator adjoint() const {
        std::vector<std::size_t> sigma(k());
        std::vector<complex> phases(k());
        for (std::size_t j = 0; j < k(); ++j) {
            sigma[sigma_[j]] = j;
            phases[sigma_[j]] = std::conj(phases_[j]);
        }
        return EigenbasisOperator(map_, std::move(sigma), std::move(phases));
    }

    // Power by repeated squaring; exponent 0 gives the identity.
    EigenbasisOperator pow(std::size_t exponent) const {
        EigenbasisOperator result = identity(map_);
        EigenbasisOperator base = *this;
        while (exponent > 0) {
            if (exponent & 1) result = result.compose(base);
            base = base.compose(base);
            exponent >>= 1;
        }
        return result;
    }

    StateVector apply(const StateVector& state) const {
        if (state.dim() != k()) throw std::invalid_argument("EigenbasisOperator: dimension mismatch");
        const std::vector<complex> c = map_.decompose(state.amplitudes());
        std::vector<complex> mapped(k());
        for (std::size_t j = 0; j < k(); ++j) mapped[sigma_[j]] = phases_[j] * c[j];
        return StateVector(state.n_qubits(), map_.reconstruct(mapped));
    }

    // Canonical-basis matrix, for small oracles.
    Eigen::MatrixXcd dense(std::size_t max_dimension = 256) const {
        if (k() > max_dimension)
            throw std::invalid_argument("EigenbasisOperator::dense: k exceeds the dense cap");
        const auto kk = static_cast<Eigen::Index>(k());
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(kk, kk);
        for (std::size_t j = 0; j < k(); ++j) {
            const StateVector from = map_.eigenvector(j + 1);
            const StateVector to = map_.eigenvector(sigma_[j] + 1);
            for (std::size_t r = 0; r < k(); ++r)
                for (std::size_t c = 0; c < k(); ++c)
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
                        phases_[j] * to[r] * std::conj(from[c]);
        }
        return m;
    }

private:
    EigenbasisMap map_;
    std::vector<std::size_t> sigma_; // 0-based eigen-index permutation
    std::vector<complex> phases_;
};

// T |psi_j> = |psi_{j+1}>, cyclically (T |psi_k> = |psi_1>).
inline EigenbasisOperator translation_operator(const EigenbasisMap& map) {
    const std::size_t k = map.k();
    std::vector<std::size_t> sigma(k);
    for (std::size_t j = 0; j < k; ++j) sigma[j] = (j + 1) % k;
    return EigenbasisOperator(map, std::move(sigma), std::vector<complex>(k, complex(1.0, 0.0)));
}

// The Riemannian unitary viewed in its own eigenbasis: diagonal e^{i theta_j}.
inline EigenbasisOperator riemann_operator(const EigenbasisMap& map, const ZeroTable& zeros) {
    if (zeros.size() != map.k()) throw std::invalid_argument("riemann_operator: size mismatch");
    const std::size_t k = map.k();
    std::vector<std::size_t> sigma(k);
    std::vector<complex> phases(k);
    for (std::size_t j = 0; j < k; ++j) {
        sigma[j] = j;
        phases[j] = std::exp(complex(0.0, theta_exact(zeros.b(j + 1)).radians));
    }
    return EigenbasisOperator(map, std::move(sigma), std::move(phases));
}

// (T U)^k: every eigenvector cycles through all k phases, so the whole
// operator is the global phase e^{i sum theta}.
inline EigenbasisOperator theta_sum_operator(const ZeroTable& zeros) {
    const EigenbasisMap map = eigenbasis(zeros);
    const EigenbasisOperator t = translation_operator(map);
    const EigenbasisOperator u = riemann_operator(map, zeros);
    return t.compose(u).pow(zeros.size());
}

// R = (T U)^dagger (U T): diagonal with eigenvalue e^{i(theta_{j+1} - theta_j)}
// on |psi_j> (wrapping to e^{i(theta_1 - theta_k)} at j = k).
inline EigenbasisOperator spacing_operator(const ZeroTable& zeros) {
    const EigenbasisMap map = eigenbasis(zeros);
    const EigenbasisOperator t = translation_operator(map);
    const EigenbasisOperator u = riemann_operator(map, zeros);
    return t.compose(u).adjoint().compose(u.compose(t));
}

// T (T R)^{k-1}: acts on |psi_1> as the telescoped phase theta_k - theta_1.
inline EigenbasisOperator spacing_sum_operator(const ZeroTable& zeros) {
    const EigenbasisMap map = eigenbasis(zeros);
    const EigenbasisOperator t = translation_operator(map);
    const EigenbasisOperator r = spacing_operator(zeros);
    return t.compose(t.compose(r).pow(zeros.size() - 1));
}

struct QpeResult {
    int t_bits = 0;
    std::vector<double> distribution; // 2^t outcome probabilities
    std::size_t top_outcome = 0;
    double phase_estimate = 0.0; // 2*pi * top / 2^t, in [0, 2*pi)
};

// Textbook phase estimation on a known eigenvector, simulated in closed form:
// for true phase fraction f, outcome m carries the Dirichlet-kernel weight
// |2^-t sum_x e^{2 pi i x (f - m/2^t)}|^2. No ancilla register is built.
inline QpeResult qpe_distribution(const EigenbasisOperator& op, const StateVector& eigenstate,
                                  int t_bits) {
    if (t_bits < 1 || t_bits > 16)
        throw std::invalid_argument("qpe_distribution: t_bits must be in 1..16");
    const StateVector mapped = op.apply(eigenstate);
    const complex lambda = inner_product(eigenstate, mapped);
    double residual2 = 0.0;
    for (std::size_t i = 0; i < eigenstate.dim(); ++i)
        residual2 += std::norm(mapped[i] - lambda * eigenstate[i]);
    if (std::sqrt(residual2) > 1e-8)
        throw std::invalid_argument("qpe_distribution: the state is not an eigenvector of op");

    const double f = wrap_positive(std::arg(lambda)) / two_pi;
    const std::size_t outcomes = std::size_t{1} << t_bits;
    QpeResult result;
    result.t_bits = t_bits;
    result.distribution.resize(outcomes);
    const double big_t = static_cast<double>(outcomes);
    for (std::size_t m = 0; m < outcomes; ++m) {
        const double delta = f - static_cast<double>(m) / big_t;
        const double denom = std::sin(pi * delta);
        if (std::abs(denom) < 1e-15) {
            result.distribution[m] = 1.0;
        } else {
            const double ratio = std::sin(pi * big_t * delta) / (big_t * denom);
            result.distribution[m] = ratio * ratio;
        }
        if (result.distribution[m] > result.distribution[result.top_outcome])
            result.top_outcome = m;
    }
    result.phase_estimate = two_pi * static_cast<double>(result.top_outcome) / big_t;
    return result;
}

struct PhaseEstimate {
    double estimate = 0.0; // QPE top outcome, radians in [0, 2*pi)
    double truth = 0.0;    // exact phase mod 2*pi
    double error = 0.0;    // circular distance
};

// Estimates sum_j theta_j via QPE on (T U)^k with the uniform
// eigen-superposition as the eigenstate.
inline PhaseEstimate estimate_theta_sum(const ZeroTable& zeros, int t_bits) {
    const EigenbasisOperator op = theta_sum_operator(zeros);
    const StateVector eigenstate = uniform_eigen_superposition(op.map());
    const QpeResult qpe = qpe_distribution(op, eigenstate, t_bits);
    double sum = 0.0;
    for (const ZetaZero& z : zeros) sum += theta_exact(z.b).radians;
    PhaseEstimate out;
    out.estimate = qpe.phase_estimate;
    out.truth = wrap_positive(sum);
    out.error = circular_distance(out.estimate, out.truth);
    return out;
}

// Estimates sum of consecutive spacings (= theta_k - theta_1) via QPE on
// T (T R)^{k-1} with eigenstate |psi_1>.
inline PhaseEstimate estimate_spacing_sum(const ZeroTable& zeros, int t_bits) {
    const EigenbasisOperator op = spacing_sum_operator(zeros);
    const StateVector eigenstate = op.map().eigenvector(1);
    const QpeResult qpe = qpe_distribution(op, eigenstate, t_bits);
    PhaseEstimate out;
    out.estimate = qpe.phase_estimate;
    out.truth = wrap_positive(theta_exact(zeros.b(zeros.size())).radians -
                              theta_exact(zeros.b(1)).radians);
    out.error = circular_distance(out.estimate, out.truth);
    return out;
}

} // namespace zetaq
