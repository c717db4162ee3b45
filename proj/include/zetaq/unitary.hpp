// The Riemannian unitary: a structured k x k unitary built from a set of
// critical-line zeros via the Cayley transform of the Hermitian part of
// G = I/2 + iB. Eigenphases, and the spacing series behind the first figure.
//
// Structure is exploited throughout: U is k-2 diagonal phases plus one 2x2
// block on the last two coordinates, so construction, application, and
// eigenphases are all O(k). Dense materialization exists for oracles and
// small instances only.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "zetaq/common.hpp"
#include "zetaq/zeros.hpp"

namespace zetaq {

// An angle in the canonical interval (-pi, pi].
struct PhaseAngle {
    double radians = 0.0;

    static PhaseAngle from_radians(double r) { return {wrap_angle(r)}; }
};

// Eigenphase of the zero s = 1/2 + ib: arg(s*/s) = -pi + atan(-b/(1/4 - b^2)).
// Strictly decreasing in b, from -pi/2 toward -pi.
inline PhaseAngle theta_exact(double b) {
    if (!(b > 0.5)) throw std::domain_error("theta_exact: b must be > 1/2");
    return PhaseAngle::from_radians(-pi + std::atan(-b / (0.25 - b * b)));
}

// Small-angle approximation -pi + 1/b; exceeds theta_exact by ~1/(12 b^3).
inline PhaseAngle theta_approx(double b) {
    if (!(b > 0.5)) throw std::domain_error("theta_approx: b must be > 1/2");
    return PhaseAngle::from_radians(-pi + 1.0 / b);
}

// Scalar Cayley transform (1 - 2ib)/(1 + 2ib) = s*/s for s = 1/2 + ib.
inline complex cayley_phase(double b) {
    return (1.0 - complex(0.0, 2.0 * b)) / (1.0 + complex(0.0, 2.0 * b));
}

namespace detail {

inline void require_usable_zero_set(std::span<const double> bs) {
    if (bs.size() < 2)
        throw std::invalid_argument("zero set must contain at least 2 zeros (the 2x2 block needs two)");
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = i + 1; j < bs.size(); ++j)
            if (bs[i] == bs[j])
                throw std::invalid_argument("zero set must be distinct (degenerate block)");
}

} // namespace detail

// The Hermitian part B of G = I/2 + iB: diagonal (b_k, ..., b_3) followed by
// the symmetric 2x2 block mixing b_1 and b_2.
struct HermitianB {
    std::size_t k = 0;
    std::vector<double> diag;            // b_k down to b_3
    std::array<std::array<double, 2>, 2> block{}; // [[(b1+b2)/2, (b1-b2)/2], [sym]]

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                                  static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < diag.size(); ++i)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
        const auto r = static_cast<Eigen::Index>(k - 2);
        m(r, r) = block[0][0];
        m(r, r + 1) = block[0][1];
        m(r + 1, r) = block[1][0];
        m(r + 1, r + 1) = block[1][1];
        return m;
    }
};

namespace detail {

inline HermitianB build_b_from_ordinates(std::span<const double> bs) {
    require_usable_zero_set(bs);
    const std::size_t k = bs.size();
    HermitianB b;
    b.k = k;
    b.diag.reserve(k - 2);
    for (std::size_t j = k; j >= 3; --j) b.diag.push_back(bs[j - 1]);
    const double sum = 0.5 * (bs[0] + bs[1]);
    const double diff = 0.5 * (bs[0] - bs[1]);
    b.block = {{{sum, diff}, {diff, sum}}};
    return b;
}

} // namespace detail

inline HermitianB build_b_matrix(const ZeroTable& zeros) {
    return detail::build_b_from_ordinates(zeros.ordinates());
}

// G = I/2 + iB, whose eigenvalues are exactly the zeros s_1..s_k.
inline Eigen::MatrixXcd build_g_matrix(const ZeroTable& zeros) {
    const HermitianB b = build_b_matrix(zeros);
    const auto k = static_cast<Eigen::Index>(b.k);
    Eigen::MatrixXcd g = complex(0.0, 1.0) * b.dense();
    g += ZetaZero::real_part * Eigen::MatrixXcd::Identity(k, k);
    return g;
}

// U = (I - 2iB)(I + 2iB)^-1, stored structurally. The eigenvalues are
// s_j*/s_j = e^{i theta_j}; the block eigenvector (e_{k-2}+e_{k-1})/sqrt(2)
// carries theta_1 and its orthogonal partner theta_2.
class RiemannUnitary {
public:
    RiemannUnitary(std::vector<complex> diag_phases,
                   std::array<std::array<complex, 2>, 2> block,
                   ZeroTable zeros)
        : diag_phases_(std::move(diag_phases)), block_(block), zeros_(std::move(zeros)) {}

    std::size_t k() const { return diag_phases_.size() + 2; }
    const std::vector<complex>& diag_phases() const { return diag_phases_; }
    const std::array<std::array<complex, 2>, 2>& block() const { return block_; }
    const ZeroTable& zeros() const { return zeros_; }

    // The two block eigenvalues, for the (1,1)/sqrt(2) and (1,-1)/sqrt(2)
    // eigenvectors respectively.
    complex block_eigenvalue_plus() const { return block_[0][0] + block_[0][1]; }
    complex block_eigenvalue_minus() const { return block_[0][0] - block_[0][1]; }

    // In-place application to a canonical-coordinate vector of length k; O(k).
    void apply(std::span<complex> amplitudes) const {
        if (amplitudes.size() != k())
            throw std::invalid_argument("RiemannUnitary::apply: dimension mismatch");
        for (std::size_t i = 0; i < diag_phases_.size(); ++i) amplitudes[i] *= diag_phases_[i];
        const complex a = amplitudes[k() - 2];
        const complex b = amplitudes[k() - 1];
        amplitudes[k() - 2] = block_[0][0] * a + block_[0][1] * b;
        amplitudes[k() - 1] = block_[1][0] * a + block_[1][1] * b;
    }

    // Dense materialization, capped to keep memory bounded (override for
    // deliberate large builds).
    Eigen::MatrixXcd dense(std::size_t max_dimension = 4096) const {
        if (k() > max_dimension)
            throw std::invalid_argument("RiemannUnitary::dense: k exceeds the dense cap; "
                                        "pass a larger max_dimension to override");
        const auto kk = static_cast<Eigen::Index>(k());
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(kk, kk);
        for (std::size_t i = 0; i < diag_phases_.size(); ++i)
            u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag_phases_[i];
        u(kk - 2, kk - 2) = block_[0][0];
        u(kk - 2, kk - 1) = block_[0][1];
        u(kk - 1, kk - 2) = block_[1][0];
        u(kk - 1, kk - 1) = block_[1][1];
        return u;
    }

private:
    std::vector<complex> diag_phases_; // order b_k, ..., b_3
    std::array<std::array<complex, 2>, 2> block_;
    ZeroTable zeros_;
};

namespace detail {

inline RiemannUnitary build_unitary_from_ordinates(std::span<const double> bs, ZeroTable zeros) {
    require_usable_zero_set(bs);
    const std::size_t k = bs.size();
    std::vector<complex> diag;
    diag.reserve(k - 2);
    for (std::size_t j = k; j >= 3; --j) diag.push_back(cayley_phase(bs[j - 1]));
    const complex u1 = cayley_phase(bs[0]);
    const complex u2 = cayley_phase(bs[1]);
    // Cayley transform of the 2x2 block in closed form: the block shares the
    // (1,1)/sqrt(2), (1,-1)/sqrt(2) eigenvectors of B's block.
    const complex avg = 0.5 * (u1 + u2);
    const complex dif = 0.5 * (u1 - u2);
    return RiemannUnitary(std::move(diag), {{{avg, dif}, {dif, avg}}}, std::move(zeros));
}

} // namespace detail

inline RiemannUnitary build_unitary(const ZeroTable& zeros) {
    return detail::build_unitary_from_ordinates(zeros.ordinates(), zeros);
}

// All k eigenphases, ordered by source-zero index j = 1..k.
inline std::vector<PhaseAngle> eigenphases(const RiemannUnitary& u) {
    const std::size_t k = u.k();
    std::vector<PhaseAngle> phases(k);
    phases[0] = PhaseAngle::from_radians(std::arg(u.block_eigenvalue_plus()));
    phases[1] = PhaseAngle::from_radians(std::arg(u.block_eigenvalue_minus()));
    for (std::size_t j = 3; j <= k; ++j)
        phases[j - 1] = PhaseAngle::from_radians(std::arg(u.diag_phases()[k - j]));
    return phases;
}

// One row of the spacing data: the angle of zero j and the gap to the next.
struct SpacingPoint {
    PhaseAngle theta;
    double delta = 0.0;
};

// Exact consecutive spacings Delta_j = theta_j - theta_{j+1} (positive since
// theta decreases in b). Row j uses theta_exact of the j-th zero.
inline std::vector<SpacingPoint> spacing_series(const ZeroTable& zeros) {
    if (zeros.size() < 2) throw std::invalid_argument("spacing_series: need k >= 2");
    std::vector<SpacingPoint> rows;
    rows.reserve(zeros.size() - 1);
    PhaseAngle theta_j = theta_exact(zeros[0].b);
    for (std::size_t j = 1; j < zeros.size(); ++j) {
        const PhaseAngle theta_next = theta_exact(zeros[j].b);
        rows.push_back({theta_j, theta_j.radians - theta_next.radians});
        theta_j = theta_next;
    }
    return rows;
}

enum class SpacingVariant {
    Density, // mean gap 2*pi / ln(b_j / 2*pi), from the counting density
    Literal, // the alternative form 2*pi * ln(j); kept for comparison only
};

// Analytic spacing curve: (mean gap) * (pi + theta_{j+1}) * (pi + theta_j).
// The Density variant is the default; Literal uses the ordinate's ordinal and
// requires known indices.
inline std::vector<SpacingPoint> spacing_analytic(const ZeroTable& zeros,
                                                  SpacingVariant variant = SpacingVariant::Density) {
    if (zeros.size() < 2) throw std::invalid_argument("spacing_analytic: need k >= 2");
    std::vector<SpacingPoint> rows;
    rows.reserve(zeros.size() - 1);
    for (std::size_t j = 0; j + 1 < zeros.size(); ++j) {
        const PhaseAngle theta_j = theta_exact(zeros[j].b);
        const PhaseAngle theta_next = theta_exact(zeros[j + 1].b);
        double gap = 0.0;
        if (variant == SpacingVariant::Density) {
            gap = two_pi / std::log(zeros[j].b / two_pi);
        } else {
            if (zeros[j].index <= 0)
                throw std::invalid_argument("spacing_analytic: literal variant needs known ordinals");
            gap = two_pi * std::log(static_cast<double>(zeros[j].index));
        }
        rows.push_back({theta_j, gap * (pi + theta_next.radians) * (pi + theta_j.radians)});
    }
    return rows;
}

} // namespace zetaq
