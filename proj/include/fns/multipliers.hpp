#ifndef FNS_MULTIPLIERS_HPP
#define FNS_MULTIPLIERS_HPP

#include <vector>

#include "fns/field.hpp"

namespace fns {

/// Dissipation symbol |xi|^{2*alpha} on the lattice; zero at xi = 0.
std::vector<double> fractional_multiplier(const Grid& grid, double alpha);

/// 2/3-rule mask: 1 where every axis index satisfies |k| <= n/3, else 0.
std::vector<double> dealias_mask(const Grid& grid);

/// Per-mode projection onto the plane perpendicular to xi; the mean mode is
/// zeroed. Output satisfies xi . u_hat(xi) = 0 everywhere.
SpectralField leray_project(SpectralField u);

/// Radial truncation: zero every coefficient with |xi| > radius.
SpectralField spectral_cutoff(SpectralField u, double radius);

/// Apply a scalar lattice multiplier to all three components.
SpectralField apply_multiplier(SpectralField u, std::span<const double> m);

}  // namespace fns

#endif
