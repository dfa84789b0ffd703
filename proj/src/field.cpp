#include "fns/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fns {

double l2_sq(const SpectralField& u) {
    double s = 0.0;
    for (const Complex& c : u.coeffs) s += std::norm(c);
    const double L = u.grid.length();
    return L * L * L * s;
}

double physical_l2_sq(const PhysicalField& f) {
    double s = 0.0;
    for (double v : f.samples) s += v * v;
    return f.grid.cell_volume() * s;
}

double sobolev_seminorm_sq(const SpectralField& u, double s) {
    const std::size_t np = u.grid.points();
    double acc = 0.0;
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = u.grid.wavevector(lin);
        const double m2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (m2 == 0.0) continue;
        const double w = std::pow(m2, s);
        acc += w * (std::norm(u.at(0, lin)) + std::norm(u.at(1, lin)) + std::norm(u.at(2, lin)));
    }
    const double L = u.grid.length();
    return L * L * L * acc;
}

double divergence_max(const SpectralField& u) {
    const std::size_t np = u.grid.points();
    double worst = 0.0;
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = u.grid.wavevector(lin);
        const Complex d = xi[0] * u.at(0, lin) + xi[1] * u.at(1, lin) + xi[2] * u.at(2, lin);
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

double divergence_scale(const SpectralField& u) {
    const std::size_t np = u.grid.points();
    double worst = 0.0;
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = u.grid.wavevector(lin);
        const double m = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        const double a = std::abs(u.at(0, lin)) + std::abs(u.at(1, lin)) + std::abs(u.at(2, lin));
        worst = std::max(worst, m * a);
    }
    return worst;
}

double hermitian_defect(const SpectralField& u) {
    const int n = u.grid.n();
    double worst = 0.0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const std::size_t lin = u.grid.index(ix, iy, iz);
                const std::size_t conj = u.grid.conjugate_index(ix, iy, iz);
                for (int c = 0; c < 3; ++c) {
                    worst = std::max(worst, std::abs(u.at(c, lin) - std::conj(u.at(c, conj))));
                }
            }
    return worst;
}

double max_abs_coeff(const SpectralField& u) {
    double worst = 0.0;
    for (const Complex& c : u.coeffs) worst = std::max(worst, std::abs(c));
    return worst;
}

bool all_finite(const SpectralField& u) {
    for (const Complex& c : u.coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

void axpy(Complex a, const SpectralField& x, SpectralField& y) {
    require_same_grid(x.grid, y.grid, "axpy");
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) y.coeffs[i] += a * x.coeffs[i];
}

void scale_by(SpectralField& u, std::span<const double> multiplier) {
    const std::size_t np = u.grid.points();
    if (multiplier.size() != np) throw std::invalid_argument("scale_by: multiplier size mismatch");
    for (int c = 0; c < 3; ++c) {
        Complex* comp = u.coeffs.data() + c * np;
        for (std::size_t lin = 0; lin < np; ++lin) comp[lin] *= multiplier[lin];
    }
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace fns
