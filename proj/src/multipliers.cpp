#include "fns/multipliers.hpp"

#include <cmath>
#include <stdexcept>

namespace fns {

std::vector<double> fractional_multiplier(const Grid& grid, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("fractional_multiplier: alpha must be > 0");
    const std::size_t np = grid.points();
    std::vector<double> m(np);
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = grid.wavevector(lin);
        const double mag2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        m[lin] = mag2 == 0.0 ? 0.0 : std::pow(mag2, alpha);
    }
    return m;
}

std::vector<double> dealias_mask(const Grid& grid) {
    const int n = grid.n();
    const int kmax = grid.dealias_index();
    std::vector<double> axis(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        axis[static_cast<std::size_t>(i)] = std::abs(grid.signed_index(i)) <= kmax ? 1.0 : 0.0;
    }
    std::vector<double> m(grid.points());
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double mxy = axis[ix] * axis[iy];
            for (int iz = 0; iz < n; ++iz) {
                m[grid.index(ix, iy, iz)] = mxy * axis[iz];
            }
        }
    return m;
}

SpectralField leray_project(SpectralField u) {
    const Grid& g = u.grid;
    const int n = g.n();
    const std::size_t np = g.points();
    Complex* ux = u.coeffs.data();
    Complex* uy = ux + np;
    Complex* uz = uy + np;
    std::size_t lin = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double fx = g.freq(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double fy = g.freq(iy);
            const double mxy = fx * fx + fy * fy;
            for (int iz = 0; iz < n; ++iz, ++lin) {
                const double fz = g.freq(iz);
                const double mag2 = mxy + fz * fz;
                if (mag2 == 0.0) {
                    ux[lin] = uy[lin] = uz[lin] = 0.0;  // mean-free convention
                    continue;
                }
                const Complex dot = fx * ux[lin] + fy * uy[lin] + fz * uz[lin];
                const Complex s = dot / mag2;
                ux[lin] -= fx * s;
                uy[lin] -= fy * s;
                uz[lin] -= fz * s;
            }
        }
    }
    return u;
}

SpectralField spectral_cutoff(SpectralField u, double radius) {
    if (radius < 0.0) throw std::invalid_argument("spectral_cutoff: radius must be >= 0");
    const Grid& g = u.grid;
    const int n = g.n();
    const std::size_t np = g.points();
    const double r2 = radius * radius;
    std::size_t lin = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double fx = g.freq(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double fy = g.freq(iy);
            const double mxy = fx * fx + fy * fy;
            for (int iz = 0; iz < n; ++iz, ++lin) {
                const double fz = g.freq(iz);
                if (mxy + fz * fz > r2) {
                    u.coeffs[lin] = 0.0;
                    u.coeffs[np + lin] = 0.0;
                    u.coeffs[2 * np + lin] = 0.0;
                }
            }
        }
    }
    return u;
}

SpectralField apply_multiplier(SpectralField u, std::span<const double> m) {
    scale_by(u, m);
    return u;
}

}  // namespace fns
