#include <catch2/catch.hpp>

#include <Eigen/Dense>

#include <algorithm>

#include "helpers.hpp"
#include "zetaq/unitary.hpp"
#include "zetaq/zeros_table.hpp"

using namespace zetaq;

TEST_CASE("theta_exact matches reference values and the complex-arg route", "[unitary]") {
    const double b1 = embedded_zero_ordinates[0];
    CHECK(theta_exact(b1).radians == Approx(-3.0708744).margin(1e-7));
    for (double b : {0.51, 0.8, 2.0, 14.134725142, 101.3179, 4321.0, 1e7}) {
        const complex s(0.5, b);
        CHECK(theta_exact(b).radians == Approx(std::arg(std::conj(s) / s)).margin(1e-12));
    }
    CHECK_THROWS_AS(theta_exact(0.5), std::domain_error);
    CHECK_THROWS_AS(theta_exact(-1.0), std::domain_error);
}

TEST_CASE("theta_exact approaches -pi from above and decreases in b", "[unitary]") {
    CHECK(theta_exact(1e9).radians + pi < 2e-9);
    CHECK(theta_exact(1e9).radians + pi > 0.0);
    double prev = theta_exact(0.51).radians;
    for (double b = 0.6; b < 1e5; b *= 1.5) {
        const double cur = theta_exact(b).radians;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("theta_approx brackets theta_exact from above", "[unitary]") {
    const double b1 = embedded_zero_ordinates[0];
    CHECK(theta_approx(b1).radians == Approx(-pi + 0.0707478).margin(1e-7));
    CHECK(std::abs(theta_exact(b1).radians - theta_approx(b1).radians) ==
          Approx(3e-5).epsilon(0.1));
    for (const ZetaZero& z : embedded_zeros())
        CHECK(theta_approx(z.b).radians > theta_exact(z.b).radians);
    CHECK(theta_approx(1.0).radians == Approx(-pi + 1.0).margin(1e-15));
}

TEST_CASE("the scalar Cayley identity holds exactly", "[unitary]") {
    CHECK(cayley_phase(0.0) == complex(1.0, 0.0));
    for (const ZetaZero& z : embedded_zeros()) {
        const complex s(0.5, z.b);
        CHECK(std::abs(cayley_phase(z.b) - std::conj(s) / s) < 1e-14);
        CHECK(std::abs(cayley_phase(z.b) - std::exp(complex(0.0, theta_exact(z.b).radians))) < 1e-14);
    }
}

TEST_CASE("build_b_matrix lays out the diagonal and the block", "[unitary]") {
    const ZeroTable z2 = embedded_zeros(2);
    const HermitianB b2 = build_b_matrix(z2);
    CHECK(b2.diag.empty());
    CHECK(b2.block[0][0] == Approx(0.5 * (z2.b(1) + z2.b(2))).margin(1e-15));
    CHECK(b2.block[0][1] == Approx(0.5 * (z2.b(1) - z2.b(2))).margin(1e-15));
    CHECK(b2.block[1][0] == b2.block[0][1]);
    CHECK(b2.block[1][1] == b2.block[0][0]);

    const ZeroTable z4 = embedded_zeros(4);
    const HermitianB b4 = build_b_matrix(z4);
    REQUIRE(b4.diag.size() == 2);
    CHECK(b4.diag[0] == z4.b(4));
    CHECK(b4.diag[1] == z4.b(3));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b4.dense());
    std::vector<double> eigs(solver.eigenvalues().data(), solver.eigenvalues().data() + 4);
    std::sort(eigs.begin(), eigs.end());
    for (std::size_t j = 1; j <= 4; ++j) CHECK(eigs[j - 1] == Approx(z4.b(j)).margin(1e-10));
}

TEST_CASE("degenerate or undersized zero sets are rejected", "[unitary]") {
    CHECK_THROWS(build_b_matrix(embedded_zeros(1)));
    const std::vector<double> dup{14.1, 20.0, 14.1};
    CHECK_THROWS(detail::build_b_from_ordinates(dup));
}

TEST_CASE("build_g_matrix is I/2 + iB with the zeros as eigenvalues", "[unitary]") {
    const ZeroTable z4 = embedded_zeros(4);
    const Eigen::MatrixXcd g = build_g_matrix(z4);
    const Eigen::MatrixXcd expected =
        0.5 * Eigen::MatrixXcd::Identity(4, 4) + complex(0.0, 1.0) * build_b_matrix(z4).dense();
    CHECK((g - expected).cwiseAbs().maxCoeff() == 0.0);

    const complex trace = g.trace();
    CHECK(trace.real() == Approx(2.0).margin(1e-12));
    CHECK(trace.imag() == Approx(z4.b(1) + z4.b(2) + z4.b(3) + z4.b(4)).margin(1e-10));

    const ZeroTable z2 = embedded_zeros(2);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(build_g_matrix(z2));
    std::vector<complex> eigs{solver.eigenvalues()(0), solver.eigenvalues()(1)};
    std::sort(eigs.begin(), eigs.end(),
              [](complex a, complex b) { return a.imag() < b.imag(); });
    CHECK(std::abs(eigs[0] - complex(0.5, z2.b(1))) < 1e-10);
    CHECK(std::abs(eigs[1] - complex(0.5, z2.b(2))) < 1e-10);
}

TEST_CASE("structured unitary equals the dense Cayley inversion", "[unitary]") {
    for (std::size_t k : {2u, 3u, 8u, 64u}) {
        const ZeroTable zeros = embedded_zeros(k);
        const RiemannUnitary u = build_unitary(zeros);
        const Eigen::MatrixXd b = build_b_matrix(zeros).dense();
        const auto kk = static_cast<Eigen::Index>(k);
        const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(kk, kk);
        const Eigen::MatrixXcd brute =
            (eye - complex(0.0, 2.0) * b) * (eye + complex(0.0, 2.0) * b).inverse();
        CHECK((u.dense() - brute).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("the unitary is unitary and O(k) application matches dense", "[unitary]") {
    const ZeroTable z64 = embedded_zeros(64);
    const RiemannUnitary u = build_unitary(z64);
    const Eigen::MatrixXcd dense = u.dense();
    CHECK((dense * dense.adjoint() - Eigen::MatrixXcd::Identity(64, 64)).cwiseAbs().maxCoeff() <
          1e-10);

    SplitMix64 rng(11);
    std::vector<complex> vec(64);
    for (auto& a : vec) a = complex(rng.symmetric(), rng.symmetric());
    Eigen::Map<const Eigen::VectorXcd> mapped(vec.data(), 64);
    const Eigen::VectorXcd via_dense = dense * mapped;
    std::vector<complex> via_apply = vec;
    u.apply(via_apply);
    for (int i = 0; i < 64; ++i) CHECK(std::abs(via_apply[i] - via_dense(i)) < 1e-12);

    CHECK_THROWS(u.dense(32)); // cap must be overridable, not silent
    CHECK(u.dense(64).rows() == 64);
}

TEST_CASE("eigenphases line up with the per-zero formula", "[unitary]") {
    const ZeroTable z2 = embedded_zeros(2);
    const auto phases2 = eigenphases(build_unitary(z2));
    CHECK(phases2[0].radians == Approx(theta_exact(z2.b(1)).radians).margin(1e-12));
    CHECK(phases2[1].radians == Approx(theta_exact(z2.b(2)).radians).margin(1e-12));

    const ZeroTable z16 = embedded_zeros(16);
    const auto phases16 = eigenphases(build_unitary(z16));
    for (std::size_t j = 1; j <= 16; ++j) {
        const complex s(0.5, z16.b(j));
        CHECK(phases16[j - 1].radians == Approx(std::arg(std::conj(s) / s)).margin(1e-10));
    }

    for (const PhaseAngle& p : eigenphases(build_unitary(embedded_zeros(100)))) {
        CHECK(p.radians > -pi);
        CHECK(p.radians <= -pi + 0.08);
    }

    const ZeroTable z128 = testutil::first_zeros(128).prefix(128);
    const auto phases128 = eigenphases(build_unitary(z128));
    for (std::size_t j = 1; j <= 128; ++j)
        CHECK(phases128[j - 1].radians == Approx(theta_exact(z128.b(j)).radians).margin(1e-10));
}

TEST_CASE("eigenphase multiset ignores reordering beyond the block", "[unitary]") {
    const ZeroTable z8 = embedded_zeros(8);
    std::vector<double> shuffled = z8.ordinates();
    std::swap(shuffled[2], shuffled[7]);
    std::swap(shuffled[4], shuffled[5]);
    const auto sorted_phases = [](const RiemannUnitary& u) {
        auto ph = eigenphases(u);
        std::vector<double> v;
        for (const auto& p : ph) v.push_back(p.radians);
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto a = sorted_phases(build_unitary(z8));
    const auto b = sorted_phases(detail::build_unitary_from_ordinates(shuffled, z8));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == Approx(b[i]).margin(1e-10));
}

TEST_CASE("spacing_series emits positive consecutive gaps", "[unitary]") {
    const ZeroTable z100 = embedded_zeros();
    const auto rows = spacing_series(z100);
    REQUIRE(rows.size() == 99);
    for (const SpacingPoint& row : rows) CHECK(row.delta > 0.0);

    const double b1 = z100.b(1), b2 = z100.b(2);
    CHECK(rows[0].delta == Approx(1.0 / b1 - 1.0 / b2).margin(1e-4));
    CHECK(rows[0].theta.radians == theta_exact(b1).radians);

    CHECK_THROWS(spacing_series(embedded_zeros(1)));
}

TEST_CASE("spacing_analytic density form matches the counting density", "[unitary]") {
    const ZeroTable z100 = embedded_zeros();
    const auto analytic = spacing_analytic(z100);
    REQUIRE(analytic.size() == 99);

    // near b = 100 the row should be about (2 pi / ln(100/2pi)) / 100^2
    std::size_t near = 0;
    while (z100.b(near + 1) < 100.0) ++near;
    const double reference = two_pi / std::log(100.0 / two_pi) * 1e-4;
    CHECK(analytic[near - 1].delta == Approx(reference).epsilon(0.15));
    CHECK(reference == Approx(2.27e-4).epsilon(0.01));

    // (pi + theta) tracks 1/b at the first zero to about 3e-5
    CHECK(std::abs((pi + theta_exact(z100.b(1)).radians) - 1.0 / z100.b(1)) < 3.2e-5);
}

TEST_CASE("analytic curve tracks the exact curve within a factor of two", "[unitary]") {
    const ZeroTable z100 = embedded_zeros();
    const auto exact = spacing_series(z100);
    const auto analytic = spacing_analytic(z100);
    for (std::size_t window = 0; window + 50 <= exact.size(); window += 49) {
        double mean_exact = 0.0, mean_analytic = 0.0;
        for (std::size_t i = window; i < window + 49; ++i) {
            mean_exact += exact[i].delta;
            mean_analytic += analytic[i].delta;
        }
        const double ratio = mean_analytic / mean_exact;
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);
    }
}

TEST_CASE("the literal spacing variant needs ordinals", "[unitary]") {
    const ZeroTable window = find_zeros_in_range(20, 60);
    CHECK_NOTHROW(spacing_analytic(window, SpacingVariant::Density));
    CHECK_THROWS(spacing_analytic(window, SpacingVariant::Literal));
    CHECK_NOTHROW(spacing_analytic(embedded_zeros(10), SpacingVariant::Literal));
}
