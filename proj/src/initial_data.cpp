#include "fns/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "fns/multipliers.hpp"
#include "fns/rng.hpp"

namespace fns {

namespace {

double profile(const SpectrumSpec& spec, double mag) {
    if (mag <= 0.0) return 0.0;
    if (spec.support_radius > 0.0 && mag > spec.support_radius) return 0.0;
    double a = std::pow(mag, spec.sigma);
    if (mag > spec.xi_knee) a *= std::pow(spec.xi_knee / mag, spec.high_decay);
    return a;
}

}  // namespace

SpectralField random_divfree_field(const Grid& grid, const SpectrumSpec& spec) {
    if (!(spec.sigma > -1.5)) {
        throw std::invalid_argument("random_divfree_field: sigma must exceed -3/2");
    }
    if (!(spec.amplitude > 0.0)) {
        throw std::invalid_argument("random_divfree_field: amplitude must be positive");
    }
    if (!(spec.xi_knee > 0.0)) {
        throw std::invalid_argument("random_divfree_field: xi_knee must be positive");
    }

    SpectralField u(grid);
    const int n = grid.n();
    const std::size_t np = grid.points();
    const int nyq = n / 2;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                // Nyquist planes stay empty: -n/2 has no +n/2 partner on the
                // lattice, so they cannot be Hermitian and divergence-free.
                if (ix == nyq || iy == nyq || iz == nyq) continue;
                const std::size_t lin = grid.index(ix, iy, iz);
                const double fx = grid.freq(ix), fy = grid.freq(iy), fz = grid.freq(iz);
                const double mag = std::sqrt(fx * fx + fy * fy + fz * fz);
                const double a = spec.amplitude * profile(spec, mag);
                if (a == 0.0) continue;
                const auto v = rng::unit_c3(spec.seed, grid.signed_index(ix),
                                            grid.signed_index(iy), grid.signed_index(iz));
                u.coeffs[lin] = a * v[0];
                u.coeffs[np + lin] = a * v[1];
                u.coeffs[2 * np + lin] = a * v[2];
            }

    // Hermitian symmetrization: average each mode with the conjugate of its
    // partner so the field represents real data. Self-paired modes lose
    // their imaginary part.
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const std::size_t lin = grid.index(ix, iy, iz);
                const std::size_t conj = grid.conjugate_index(ix, iy, iz);
                if (conj < lin) continue;
                for (int c = 0; c < 3; ++c) {
                    const Complex a = u.at(c, lin);
                    const Complex b = u.at(c, conj);
                    const Complex sym = 0.5 * (a + std::conj(b));
                    u.at(c, lin) = sym;
                    u.at(c, conj) = std::conj(sym);
                }
            }

    // Projection last: it commutes with the symmetrization away from the
    // Nyquist planes and repairs the divergence on them (xi and -xi alias to
    // the same index there, so symmetrizing alone would spoil it).
    return leray_project(std::move(u));
}

double sigma_for_p(double p) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("sigma_for_p: p must lie in [1, 2]");
    return 3.0 / p - 3.0;
}

SpectralField taylor_green_field(const Grid& grid, double amplitude) {
    SpectralField u(grid);
    const std::size_t np = grid.points();
    const Complex i_unit(0.0, 1.0);
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                const int ix = sx < 0 ? grid.n() - 1 : 1;
                const int iy = sy < 0 ? grid.n() - 1 : 1;
                const int iz = sz < 0 ? grid.n() - 1 : 1;
                const std::size_t lin = grid.index(ix, iy, iz);
                u.coeffs[lin] = -i_unit * amplitude * static_cast<double>(sx) / 8.0;
                u.coeffs[np + lin] = i_unit * amplitude * static_cast<double>(sy) / 8.0;
            }
    return u;
}

}  // namespace fns
