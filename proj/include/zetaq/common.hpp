// Shared constants and small numeric helpers used across the library.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace zetaq {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Wraps an angle to the canonical interval (-pi, pi].
inline double wrap_angle(double theta) {
    double w = std::remainder(theta, two_pi);
    if (w <= -pi) w += two_pi;
    return w;
}

// Wraps to [0, 2*pi).
inline double wrap_positive(double theta) {
    double w = std::fmod(theta, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

// Circular distance between two angles, in [0, pi].
inline double circular_distance(double a, double b) {
    return std::abs(std::remainder(a - b, two_pi));
}

inline bool is_power_of_two(std::size_t k) {
    return k != 0 && (k & (k - 1)) == 0;
}

// log2 of an exact power of two.
inline int log2_exact(std::size_t k) {
    if (!is_power_of_two(k)) throw std::invalid_argument("dimension must be a power of two");
    int n = 0;
    while ((std::size_t{1} << n) < k) ++n;
    return n;
}

// Qubit q of an n-qubit basis index, with qubit 0 the most significant bit.
inline int basis_bit(std::size_t index, int n_qubits, int qubit) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

// Deterministic 64-bit mixer; the seed fully determines the stream.
// Used wherever "random" probe data must be bit-stable across runs and platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1).
    double symmetric() { return 2.0 * uniform() - 1.0; }

private:
    std::uint64_t state_;
};

} // namespace zetaq
