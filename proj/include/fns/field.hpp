#ifndef FNS_FIELD_HPP
#define FNS_FIELD_HPP

#include <complex>
#include <span>
#include <vector>

#include "fns/grid.hpp"

namespace fns {

using Complex = std::complex<double>;

/// Three-component velocity field in Fourier coefficients, component-major.
///
/// coeffs[c * points + lin] is the coefficient u_hat_c(xi) at the lattice
/// point with linear index lin. Coefficients follow the convention
/// u(x) = sum_k u_hat(k) exp(i xi_k . x), so the forward transform carries
/// the 1/n^3 normalization and ||u||_2^2 = L^3 * sum |u_hat|^2.
struct SpectralField {
    Grid grid;
    std::vector<Complex> coeffs;

    explicit SpectralField(const Grid& g) : grid(g), coeffs(3 * g.points()) {}

    Complex& at(int c, std::size_t lin) { return coeffs[c * grid.points() + lin]; }
    const Complex& at(int c, std::size_t lin) const { return coeffs[c * grid.points() + lin]; }

    std::span<Complex> component(int c) {
        return {coeffs.data() + c * grid.points(), grid.points()};
    }
    std::span<const Complex> component(int c) const {
        return {coeffs.data() + c * grid.points(), grid.points()};
    }
};

/// Real-valued collocation samples of a three-component field, component-major.
struct PhysicalField {
    Grid grid;
    std::vector<double> samples;

    explicit PhysicalField(const Grid& g) : grid(g), samples(3 * g.points()) {}

    double& at(int c, std::size_t lin) { return samples[c * grid.points() + lin]; }
    double at(int c, std::size_t lin) const { return samples[c * grid.points() + lin]; }

    std::span<double> component(int c) {
        return {samples.data() + c * grid.points(), grid.points()};
    }
    std::span<const double> component(int c) const {
        return {samples.data() + c * grid.points(), grid.points()};
    }
};

/// ||u||_2^2 = L^3 * sum_k |u_hat(k)|^2 (Parseval pairing with physical_l2_sq).
double l2_sq(const SpectralField& u);

/// ||f||_2^2 = (L/n)^3 * sum_x |f(x)|^2 over collocation points.
double physical_l2_sq(const PhysicalField& f);

/// L^3 * sum_k |xi|^{2s} |u_hat(k)|^2; s may be fractional.
double sobolev_seminorm_sq(const SpectralField& u, double s);

/// max_k |xi . u_hat(k)|, the worst per-mode divergence.
double divergence_max(const SpectralField& u);

/// max_k |xi| |u_hat(k)|; the natural scale against which divergence_max is judged.
double divergence_scale(const SpectralField& u);

/// max over modes of |u_hat(k) - conj(u_hat(-k))|.
double hermitian_defect(const SpectralField& u);

/// max_k |u_hat(k)| over all components.
double max_abs_coeff(const SpectralField& u);

bool all_finite(const SpectralField& u);

/// y += a*x (grids must match).
void axpy(Complex a, const SpectralField& x, SpectralField& y);

/// Pointwise multiply every component by a scalar lattice function.
void scale_by(SpectralField& u, std::span<const double> multiplier);

void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace fns

#endif
