// Riemann-Siegel theta and Z functions.
//
// rs_z evaluates Z(t) two ways: an Euler-Maclaurin evaluation of
// zeta(1/2 + it) below t = 1000 (near machine precision, affordable there)
// and the Riemann-Siegel main sum with the C0 and C1 remainder terms above
// (error measured below 1e-5 on [1e3, 1.6e4] and shrinking as t^(-5/4)
// beyond). Real zeros of Z coincide with the critical-line zeros of zeta.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "zetaq/common.hpp"

namespace zetaq {

// Riemann-Siegel theta, by the standard asymptotic series.
// Accurate to ~4e-14 at t = 100; the next omitted term is O(t^-5).
inline double rs_theta(double t) {
    if (t < 1.0) throw std::domain_error("rs_theta: t must be >= 1");
    const double u = t / 2.0;
    return u * std::log(t / two_pi) - u - pi / 8.0
         + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t);
}

namespace detail {

// Cached ln(n) and 1/sqrt(n) for the oscillating sums. Fixed size; entries
// beyond the cache fall back to direct evaluation.
struct TermTable {
    std::vector<double> log_n;
    std::vector<double> rsqrt_n;
};

inline const TermTable& term_table() {
    static const TermTable table = [] {
        constexpr std::size_t size = 2048;
        TermTable t;
        t.log_n.resize(size + 1);
        t.rsqrt_n.resize(size + 1);
        for (std::size_t n = 1; n <= size; ++n) {
            t.log_n[n] = std::log(static_cast<double>(n));
            t.rsqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
        return t;
    }();
    return table;
}

inline double log_of(std::size_t n) {
    const TermTable& t = term_table();
    return n < t.log_n.size() ? t.log_n[n] : std::log(static_cast<double>(n));
}

inline double rsqrt_of(std::size_t n) {
    const TermTable& t = term_table();
    return n < t.rsqrt_n.size() ? t.rsqrt_n[n] : 1.0 / std::sqrt(static_cast<double>(n));
}

// zeta(1/2 + it) by Euler-Maclaurin with N ~ 1.3 t terms and seven
// Bernoulli corrections.
inline complex zeta_half_line(double t) {
    const complex s(0.5, t);
    const std::size_t big_n = static_cast<std::size_t>(std::max(30.0, 1.3 * t)) + 10;
    complex sum(0.0, 0.0);
    for (std::size_t n = 1; n <= big_n; ++n) {
        const double ln = log_of(n);
        const double phase = -t * ln;
        sum += rsqrt_of(n) * complex(std::cos(phase), std::sin(phase));
    }
    const double ln_n = std::log(static_cast<double>(big_n));
    const complex n_to_minus_s = std::exp(-s * ln_n);
    sum += std::exp((1.0 - s) * ln_n) / (s - 1.0);
    sum -= 0.5 * n_to_minus_s;
    // B_{2k}/(2k)! for k = 1..7
    static constexpr double bern[] = {
        1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0,
        1.0 / 47900160.0, -691.0 / 1307674368000.0, 1.0 / 74724249600.0};
    complex pochhammer = s;
    complex n_pow = n_to_minus_s / static_cast<double>(big_n);
    const double inv_n2 = 1.0 / (static_cast<double>(big_n) * static_cast<double>(big_n));
    for (int k = 1; k <= 7; ++k) {
        sum += bern[k - 1] * pochhammer * n_pow;
        pochhammer *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        n_pow *= inv_n2;
    }
    return sum;
}

// Remainder shape function Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p).
// The singularities at p = 1/4, 3/4 are removable; the ratio is numerically
// stable except exactly at the points, which are nudged.
inline double rs_psi(double p) {
    double denom = std::cos(two_pi * p);
    if (std::abs(denom) < 1e-12) {
        p += 1e-9;
        denom = std::cos(two_pi * p);
    }
    return std::cos(two_pi * (p * p - p - 1.0 / 16.0)) / denom;
}

// Third derivative of Psi by Richardson-extrapolated central differences.
inline double rs_psi_d3(double p) {
    const auto stencil = [p](double h) {
        return (rs_psi(p + 2 * h) - 2 * rs_psi(p + h) + 2 * rs_psi(p - h) - rs_psi(p - 2 * h))
             / (2 * h * h * h);
    };
    const double coarse = stencil(1e-3);
    const double fine = stencil(5e-4);
    return (16.0 * fine - coarse) / 15.0;
}

} // namespace detail

// Riemann-Siegel Z(t). Sign changes of Z locate critical-line zeta zeros.
inline double rs_z(double t) {
    if (t < 10.0) throw std::domain_error("rs_z: t must be >= 10");
    if (t < 1000.0) {
        const complex z = std::exp(complex(0.0, rs_theta(t))) * detail::zeta_half_line(t);
        return z.real();
    }
    const double tau = std::sqrt(t / two_pi);
    const std::size_t main_n = static_cast<std::size_t>(tau);
    const double p = tau - static_cast<double>(main_n);
    const double theta = rs_theta(t);
    double sum = 0.0;
    for (std::size_t n = 1; n <= main_n; ++n) {
        sum += std::cos(theta - t * detail::log_of(n)) * detail::rsqrt_of(n);
    }
    sum *= 2.0;
    const double scale = (main_n % 2 == 1) ? 1.0 : -1.0;
    double remainder = detail::rs_psi(p)
                     - detail::rs_psi_d3(p) / (96.0 * pi * pi) / tau;
    remainder *= scale * std::pow(t / two_pi, -0.25);
    return sum + remainder;
}

// Gram point g_n: the solution of rs_theta(t) = n*pi, for t in the range
// where rs_theta is increasing (t > 2*pi). Bisection on a bracket grown
// from an asymptotic first guess.
inline double gram_point(long n) {
    const double target = static_cast<double>(n) * pi;
    double lo = 9.0;
    double hi = 20.0;
    while (rs_theta(hi) < target) {
        lo = hi;
        hi *= 1.5;
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (rs_theta(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace zetaq
