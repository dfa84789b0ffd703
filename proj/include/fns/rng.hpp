#ifndef FNS_RNG_HPP
#define FNS_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace fns {

// Counter-based generator: every value is a pure function of (seed, key),
// with no sequential state. A mode keyed by its signed integer wavenumbers
// therefore draws the same values on every grid that contains it, and
// field construction is reproducible bit-for-bit for a fixed seed.
namespace rng {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t value(std::uint64_t seed, std::uint64_t key) {
    return mix64(seed + 0x9e3779b97f4a7c15ULL * (key + 1));
}

/// Packs signed per-axis wavenumbers plus a draw slot into one key.
/// 20 bits per component limits |k| < 2^19, far beyond any lattice here.
inline std::uint64_t mode_key(int kx, int ky, int kz, unsigned draw) {
    const auto enc = [](int k) { return static_cast<std::uint64_t>(k) & 0xfffffULL; };
    return (enc(kx) << 44) | (enc(ky) << 24) | (enc(kz) << 4) | (draw & 0xfULL);
}

/// Uniform double in the open interval (0, 1).
inline double uniform(std::uint64_t seed, std::uint64_t key) {
    return (static_cast<double>(value(seed, key) >> 11) + 0.5) * 0x1.0p-53;
}

/// Box-Muller pair from draw slots d and d+1.
inline std::pair<double, double> gaussian_pair(std::uint64_t seed, int kx, int ky, int kz,
                                               unsigned d) {
    const double u1 = uniform(seed, mode_key(kx, ky, kz, d));
    const double u2 = uniform(seed, mode_key(kx, ky, kz, d + 1));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

/// Random unit vector in C^3 for the mode (kx, ky, kz), from draw slots 0..5.
inline std::array<std::complex<double>, 3> unit_c3(std::uint64_t seed, int kx, int ky, int kz) {
    const auto [g0, g1] = gaussian_pair(seed, kx, ky, kz, 0);
    const auto [g2, g3] = gaussian_pair(seed, kx, ky, kz, 2);
    const auto [g4, g5] = gaussian_pair(seed, kx, ky, kz, 4);
    std::array<std::complex<double>, 3> v = {std::complex<double>(g0, g1),
                                             std::complex<double>(g2, g3),
                                             std::complex<double>(g4, g5)};
    const double nrm = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    for (auto& c : v) c /= nrm;
    return v;
}

}  // namespace rng
}  // namespace fns

#endif
