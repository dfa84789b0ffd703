#ifndef FNS_INITIAL_DATA_HPP
#define FNS_INITIAL_DATA_HPP

#include <cstdint>

#include "fns/field.hpp"

namespace fns {

/// Low-frequency spectral profile of a constructed field.
///
/// |u_hat(xi)| follows |xi|^sigma up to xi_knee, then rolls off as
/// (xi_knee/|xi|)^high_decay; support_radius > 0 additionally zeroes all
/// modes beyond that radius. The shell mass integral_{|xi|<=r} |u_hat|^2
/// then scales like r^{2*sigma+3} over resolved shells, which is the
/// spectral signature of L^p data with sigma = 3/p - 3.
struct SpectrumSpec {
    double sigma = 0.0;
    double xi_knee = 1.0;
    double high_decay = 8.0;
    double amplitude = 1.0;
    std::uint64_t seed = 0;
    double support_radius = 0.0;  // 0 = no hard cap
};

/// Divergence-free random field with the requested spectral profile.
/// Each mode gets amplitude*profile(|xi|) times a random unit vector in C^3,
/// then Leray projection and Hermitian symmetrization; u_hat(0) = 0.
/// Deterministic for a fixed seed, independent of grid size on shared modes.
SpectralField random_divfree_field(const Grid& grid, const SpectrumSpec& spec);

/// sigma = 3/p - 3, the profile exponent whose shell mass matches L^p data.
double sigma_for_p(double p);

/// Single-triad benchmark flow A(sin x cos y cos z, -cos x sin y cos z, 0)
/// placed directly on the eight (+-1,+-1,+-1) lattice modes.
SpectralField taylor_green_field(const Grid& grid, double amplitude);

}  // namespace fns

#endif
