#include <catch2/catch.hpp>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "zetaq/qpe.hpp"
#include "zetaq/zeros_table.hpp"

using namespace zetaq;

namespace {

double theta_total(const ZeroTable& zeros) {
    double sum = 0.0;
    for (const ZetaZero& z : zeros) sum += theta_exact(z.b).radians;
    return sum;
}

} // namespace

TEST_CASE("translation operator cycles the eigenbasis", "[qpe]") {
    const EigenbasisMap map = eigenbasis(embedded_zeros(8));
    const EigenbasisOperator t = translation_operator(map);
    CHECK(t.sigma()[7] == 0); // T |psi_k> = |psi_1>

    const EigenbasisOperator tk = t.pow(8);
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(tk.sigma()[j] == j);
        CHECK(std::abs(tk.phases()[j] - complex(1.0, 0.0)) < 1e-10);
    }

    const Eigen::MatrixXcd dense = t.dense();
    CHECK((dense * dense.adjoint() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("applying T maps each eigenvector to the next", "[qpe]") {
    const EigenbasisMap map = eigenbasis(embedded_zeros(4));
    const EigenbasisOperator t = translation_operator(map);
    for (std::size_t j = 1; j <= 4; ++j) {
        const StateVector shifted = t.apply(map.eigenvector(j));
        const StateVector expected = map.eigenvector(j % 4 + 1);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(shifted[i] - expected[i]) < 1e-12);
    }
}

TEST_CASE("theta_sum_operator multiplies the superposition by the phase sum", "[qpe]") {
    const ZeroTable z4 = embedded_zeros(4);
    const EigenbasisOperator op = theta_sum_operator(z4);
    const StateVector u = uniform_eigen_superposition(op.map());
    const StateVector w = op.apply(u);
    const complex lambda = inner_product(u, w);
    CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-10);
    CHECK(circular_distance(std::arg(lambda), theta_total(z4)) < 1e-10);

    // same eigenvector for T, so the operators commute on it
    const EigenbasisOperator t = translation_operator(op.map());
    const StateVector a = t.apply(op.apply(u));
    const StateVector b = op.apply(t.apply(u));
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
}

TEST_CASE("theta_sum_operator at k = 2 against a dense matrix power", "[qpe]") {
    const ZeroTable z2 = embedded_zeros(2);
    const EigenbasisOperator op = theta_sum_operator(z2);
    const EigenbasisMap map = eigenbasis(z2);
    const Eigen::MatrixXcd tu = translation_operator(map).dense() * build_unitary(z2).dense();
    const Eigen::MatrixXcd squared = tu * tu;
    CHECK((op.dense() - squared).cwiseAbs().maxCoeff() < 1e-12);
    const complex lambda = squared(0, 0);
    CHECK(circular_distance(std::arg(lambda), theta_total(z2)) < 1e-10);
}

TEST_CASE("dense (TU)^k acts as a pure global phase", "[qpe]") {
    for (std::size_t k : {4u, 8u}) {
        const ZeroTable zeros = embedded_zeros(k);
        const EigenbasisMap map = eigenbasis(zeros);
        Eigen::MatrixXcd power =
            Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        const Eigen::MatrixXcd tu = translation_operator(map).dense() * build_unitary(zeros).dense();
        for (std::size_t i = 0; i < k; ++i) power = tu * power;

        const StateVector u = uniform_eigen_superposition(map);
        Eigen::Map<const Eigen::VectorXcd> uv(u.amplitudes().data(), static_cast<Eigen::Index>(k));
        const Eigen::VectorXcd after = power * uv;
        // every nonzero amplitude picks up one common phase
        const complex ratio = after(0) / uv(0);
        CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-9);
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(k); ++i)
            CHECK(std::abs(after(i) - ratio * uv(i)) < 1e-9);
        CHECK(circular_distance(std::arg(ratio), theta_total(zeros)) < 1e-9);
    }
}

TEST_CASE("spacing operator is diagonal with consecutive differences", "[qpe]") {
    const ZeroTable z4 = embedded_zeros(4);
    const EigenbasisOperator r = spacing_operator(z4);
    CHECK(circular_distance(std::arg(r.eigenvalue_on(1)),
                            theta_exact(z4.b(2)).radians - theta_exact(z4.b(1)).radians) < 1e-10);
    // wrap-around eigenvalue closes the cycle
    CHECK(circular_distance(std::arg(r.eigenvalue_on(4)),
                            theta_exact(z4.b(1)).radians - theta_exact(z4.b(4)).radians) < 1e-10);

    complex product(1.0, 0.0);
    for (const complex& phase : r.phases()) product *= phase;
    CHECK(std::abs(product - complex(1.0, 0.0)) < 1e-12);

    // diagonal in the eigenbasis: conjugating the dense form by the
    // eigenvector columns leaves nothing off the diagonal
    const ZeroTable z8 = embedded_zeros(8);
    const EigenbasisOperator r8 = spacing_operator(z8);
    const Eigen::MatrixXcd cols = eigenbasis(z8).dense_columns();
    const Eigen::MatrixXcd in_eigenbasis = cols.adjoint() * r8.dense() * cols;
    for (Eigen::Index i = 0; i < 8; ++i)
        for (Eigen::Index j = 0; j < 8; ++j)
            if (i != j) CHECK(std::abs(in_eigenbasis(i, j)) < 1e-12);
}

TEST_CASE("spacing eigenphases are the cyclic consecutive differences", "[qpe]") {
    const ZeroTable z16 = embedded_zeros(16);
    const EigenbasisOperator r = spacing_operator(z16);
    for (std::size_t j = 1; j <= 16; ++j) {
        const double expected = theta_exact(z16.b(j % 16 + 1)).radians -
                                theta_exact(z16.b(j)).radians;
        CHECK(circular_distance(std::arg(r.eigenvalue_on(j)), expected) < 1e-9);
    }
}

TEST_CASE("spacing_sum_operator telescopes to theta_k - theta_1", "[qpe]") {
    for (std::size_t k : {2u, 4u}) {
        const ZeroTable zeros = embedded_zeros(k);
        const EigenbasisOperator op = spacing_sum_operator(zeros);
        const StateVector psi1 = op.map().eigenvector(1);
        const StateVector after = op.apply(psi1);
        const complex lambda = inner_product(psi1, after);
        CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-10);
        const double expected =
            theta_exact(zeros.b(k)).radians - theta_exact(zeros.b(1)).radians;
        CHECK(circular_distance(std::arg(lambda), expected) < 1e-10);
    }
}

TEST_CASE("qpe_distribution is exact on dyadic phases", "[qpe]") {
    const EigenbasisMap map = eigenbasis(embedded_zeros(4));
    const std::vector<std::size_t> identity{0, 1, 2, 3};
    const std::vector<complex> phases(4, std::exp(complex(0.0, two_pi * 3.0 / 8.0)));
    const EigenbasisOperator op(map, identity, phases);
    const QpeResult res = qpe_distribution(op, map.eigenvector(2), 3);
    CHECK(res.top_outcome == 3);
    CHECK(res.distribution[3] == Approx(1.0).margin(1e-12));
    CHECK(res.phase_estimate == Approx(two_pi * 3.0 / 8.0).margin(1e-12));
}

TEST_CASE("qpe_distribution sums to one and honors the nearest-bin bound", "[qpe]") {
    const EigenbasisMap map = eigenbasis(embedded_zeros(4));
    const std::vector<std::size_t> identity{0, 1, 2, 3};
    SplitMix64 rng(7);
    for (int round = 0; round < 40; ++round) {
        const double f = rng.uniform();
        const std::vector<complex> phases(4, std::exp(complex(0.0, two_pi * f)));
        const EigenbasisOperator op(map, identity, phases);
        const QpeResult res = qpe_distribution(op, map.eigenvector(1), 6);
        double total = 0.0;
        for (double p : res.distribution) total += p;
        CHECK(total == Approx(1.0).margin(1e-12));
        const std::size_t nearest = static_cast<std::size_t>(std::llround(f * 64.0)) % 64;
        CHECK(res.distribution[nearest] >= 4.0 / (pi * pi) - 1e-12);
    }
}

TEST_CASE("qpe_distribution rejects non-eigenvectors", "[qpe]") {
    const EigenbasisMap map = eigenbasis(embedded_zeros(4));
    const EigenbasisOperator t = translation_operator(map);
    CHECK_THROWS(qpe_distribution(t, map.eigenvector(1), 4));
    CHECK_THROWS(qpe_distribution(t, map.eigenvector(1), 0));
    CHECK_THROWS(qpe_distribution(t, map.eigenvector(1), 17));
}

TEST_CASE("closed-form QPE equals the full register simulation", "[qpe]") {
    const ZeroTable z4 = embedded_zeros(4);
    const EigenbasisOperator op = theta_sum_operator(z4);
    const StateVector u = uniform_eigen_superposition(op.map());
    Eigen::Map<const Eigen::VectorXcd> uv(u.amplitudes().data(), 4);
    for (int t_bits : {2, 4, 6}) {
        const QpeResult closed = qpe_distribution(op, u, t_bits);
        const auto full = oracle::qpe_full_simulation(op.dense(), uv, t_bits);
        REQUIRE(full.size() == closed.distribution.size());
        for (std::size_t m = 0; m < full.size(); ++m)
            CHECK(closed.distribution[m] == Approx(full[m]).margin(1e-10));
    }
}

TEST_CASE("estimate_theta_sum hits the QPE resolution bound", "[qpe]") {
    const ZeroTable z4 = embedded_zeros(4);
    const PhaseEstimate est = estimate_theta_sum(z4, 12);
    CHECK(est.truth == Approx(wrap_positive(theta_total(z4))).margin(1e-12));
    CHECK(est.error <= two_pi / 4096.0);

    double prev_error = 1e9;
    for (int t = 8; t <= 14; ++t) {
        const PhaseEstimate e = estimate_theta_sum(z4, t);
        CHECK(e.error <= prev_error + 1e-15);
        prev_error = e.error;
    }
}

TEST_CASE("estimate_spacing_sum telescopes and hits the bound", "[qpe]") {
    const ZeroTable z4 = embedded_zeros(4);
    const PhaseEstimate est = estimate_spacing_sum(z4, 12);
    CHECK(est.truth ==
          Approx(wrap_positive(theta_exact(z4.b(4)).radians - theta_exact(z4.b(1)).radians))
              .margin(1e-12));
    CHECK(est.error <= two_pi / 4096.0);

    const ZeroTable z2 = embedded_zeros(2);
    const PhaseEstimate single = estimate_spacing_sum(z2, 12);
    CHECK(single.truth ==
          Approx(wrap_positive(theta_exact(z2.b(2)).radians - theta_exact(z2.b(1)).radians))
              .margin(1e-12));
}
