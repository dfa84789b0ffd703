#include "fns/dynamics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "fns/multipliers.hpp"
#include "fns/transform.hpp"

namespace fns {

void SimParams::validate(const Grid& grid) const {
    if (!(alpha > 0.0) || alpha > 1.25) {
        throw std::invalid_argument("params: alpha must lie in (0, 5/4]");
    }
    if (!(nu >= 0.0)) throw std::invalid_argument("params: nu must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("params: dt must be > 0");
    if (!(t_end >= dt)) throw std::invalid_argument("params: t_end must be >= dt");
    if (!(gamma > 0.0)) throw std::invalid_argument("params: gamma must be > 0");
    if (!(amplitude > 0.0)) throw std::invalid_argument("params: amplitude must be > 0");
    if (cutoff_n > grid.dealias_radius() * (1.0 + 1e-12)) {
        throw std::invalid_argument("params: cutoff_n exceeds the grid dealias radius");
    }
}

namespace {

// exp(-nu |xi|^{2a} dt) tables are reused across steps of the same run.
using DecayKey = std::tuple<int, double, double, double, double>;
std::mutex decay_mutex;

const std::vector<double>& decay_table(const Grid& grid, double alpha, double nu, double dt) {
    static std::map<DecayKey, std::vector<double>> cache;
    const DecayKey key{grid.n(), grid.length(), alpha, nu, dt};
    std::lock_guard<std::mutex> lock(decay_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<double> tbl(grid.points());
    for (std::size_t lin = 0; lin < grid.points(); ++lin) {
        const auto xi = grid.wavevector(lin);
        const double mag2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        const double sym = mag2 == 0.0 ? 0.0 : std::pow(mag2, alpha);
        tbl[lin] = std::exp(-nu * sym * dt);
    }
    return cache.emplace(key, std::move(tbl)).first->second;
}

const std::vector<double>& dealias_table(const Grid& grid) {
    static std::map<std::pair<int, double>, std::vector<double>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    const std::pair<int, double> key{grid.n(), grid.length()};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, dealias_mask(grid)).first->second;
}

// F((u . grad) u) with gradients formed spectrally and products taken at
// collocation points, then 2/3-rule masked. Exact on the retained band for
// band-limited input.
SpectralField convection_spectral(const SpectralField& u) {
    const Grid& grid = u.grid;
    const int n = grid.n();
    const std::size_t np = grid.points();

    AlignedBuffer phys[3] = {AlignedBuffer(np), AlignedBuffer(np), AlignedBuffer(np)};
    for (int j = 0; j < 3; ++j) {
        std::copy_n(u.coeffs.data() + j * np, np, phys[j].data());
        backward_c2c_inplace(grid, phys[j]);
    }

    SpectralField conv(grid);
    AlignedBuffer scratch(np);
    std::vector<double> acc(np);
    for (int i = 0; i < 3; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int j = 0; j < 3; ++j) {
            // (d_j u_i) via the i*xi_j multiplier
            const Complex* ui = u.coeffs.data() + i * np;
            Complex* s = scratch.data();
            std::size_t lin = 0;
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy) {
                    const double xy = j == 0 ? grid.freq(ix) : j == 1 ? grid.freq(iy) : 0.0;
                    for (int iz = 0; iz < n; ++iz, ++lin) {
                        const double f = j == 2 ? grid.freq(iz) : xy;
                        const Complex c = ui[lin];
                        s[lin] = Complex(-f * c.imag(), f * c.real());
                    }
                }
            backward_c2c_inplace(grid, scratch);
            const Complex* uj = phys[j].data();
            for (std::size_t k = 0; k < np; ++k) {
                acc[k] += uj[k].real() * s[k].real();
            }
        }
        Complex* s = scratch.data();
        for (std::size_t k = 0; k < np; ++k) s[k] = Complex(acc[k], 0.0);
        forward_c2c_inplace(grid, scratch);
        std::copy_n(s, np, conv.coeffs.data() + i * np);
    }
    scale_by(conv, dealias_table(grid));
    return conv;
}

}  // namespace

SpectralField nonlinear_rhs(const SpectralField& u, const SimParams& params) {
    SpectralField rhs = convection_spectral(u);

    // fused J_N truncation, projection, and sign flip (one pass over modes)
    const Grid& g = rhs.grid;
    const int n = g.n();
    const std::size_t np = g.points();
    const double r2 = params.cutoff_n * params.cutoff_n;
    Complex* rx = rhs.coeffs.data();
    Complex* ry = rx + np;
    Complex* rz = ry + np;
    std::size_t lin = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double fx = g.freq(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double fy = g.freq(iy);
            const double mxy = fx * fx + fy * fy;
            for (int iz = 0; iz < n; ++iz, ++lin) {
                const double fz = g.freq(iz);
                const double mag2 = mxy + fz * fz;
                if (mag2 == 0.0 || mag2 > r2) {
                    rx[lin] = ry[lin] = rz[lin] = 0.0;
                    continue;
                }
                const Complex dot = fx * rx[lin] + fy * ry[lin] + fz * rz[lin];
                const Complex s = dot / mag2;
                rx[lin] = fx * s - rx[lin];
                ry[lin] = fy * s - ry[lin];
                rz[lin] = fz * s - rz[lin];
            }
        }
    }
    return rhs;
}

SimState step(SimState state, const SimParams& params) {
    const Grid& grid = state.u.grid;
    const std::vector<double>& decay = decay_table(grid, params.alpha, params.nu, params.dt);
    const double dt = params.dt;
    const std::size_t np = grid.points();

    const SpectralField h0 = nonlinear_rhs(state.u, params);

    SpectralField pred(grid);
    for (int c = 0; c < 3; ++c) {
        const Complex* uc = state.u.coeffs.data() + c * np;
        const Complex* hc = h0.coeffs.data() + c * np;
        Complex* pc = pred.coeffs.data() + c * np;
        for (std::size_t lin = 0; lin < np; ++lin) {
            pc[lin] = decay[lin] * (uc[lin] + dt * hc[lin]);
        }
    }

    const SpectralField h1 = nonlinear_rhs(pred, params);

    for (int c = 0; c < 3; ++c) {
        Complex* uc = state.u.coeffs.data() + c * np;
        const Complex* h0c = h0.coeffs.data() + c * np;
        const Complex* h1c = h1.coeffs.data() + c * np;
        for (std::size_t lin = 0; lin < np; ++lin) {
            uc[lin] = decay[lin] * uc[lin] +
                      0.5 * dt * (decay[lin] * h0c[lin] + h1c[lin]);
        }
    }
    if (!all_finite(state.u)) throw BlowUpError(state.t);
    state.t += dt;
    return state;
}

EnergyBudget energy_budget(std::span<const double> times, std::span<const double> kinetic,
                           std::span<const double> diss_density) {
    const std::size_t n = times.size();
    if (n < 2 || kinetic.size() != n || diss_density.size() != n) {
        throw std::invalid_argument("energy_budget: need >= 2 aligned samples");
    }
    EnergyBudget b;
    b.times.assign(times.begin(), times.end());
    b.kinetic.assign(kinetic.begin(), kinetic.end());
    b.dissipated.resize(n);
    b.defect.resize(n);
    b.dissipated[0] = 0.0;
    b.defect[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double h = times[i] - times[i - 1];
        if (!(h > 0.0)) throw std::invalid_argument("energy_budget: times must increase");
        b.dissipated[i] =
            b.dissipated[i - 1] + 0.5 * h * (diss_density[i - 1] + diss_density[i]);
        b.defect[i] = b.kinetic[i] + b.dissipated[i] - b.kinetic[0];
    }
    return b;
}

EnergyBudget energy_budget(std::span<const SimState> states, const SimParams& params) {
    std::vector<double> t, kin, dd;
    t.reserve(states.size());
    for (const SimState& s : states) {
        t.push_back(s.t);
        kin.push_back(l2_sq(s.u));
        dd.push_back(2.0 * params.nu * sobolev_seminorm_sq(s.u, params.alpha));
    }
    return energy_budget(t, kin, dd);
}

std::vector<Complex> pressure_from_velocity(const SpectralField& u) {
    const Grid& grid = u.grid;
    const std::size_t np = grid.points();
    const PhysicalField u_phys = inverse_transform(u);
    const std::vector<double> mask = dealias_mask(grid);

    std::vector<Complex> p(np, Complex(0.0, 0.0));
    std::vector<Complex> scratch(np);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const double* ui = u_phys.samples.data() + i * np;
            const double* uj = u_phys.samples.data() + j * np;
            for (std::size_t lin = 0; lin < np; ++lin) {
                scratch[lin] = Complex(ui[lin] * uj[lin], 0.0);
            }
            forward_c2c(grid, scratch.data());
            const double w = i == j ? 1.0 : 2.0;  // symmetric off-diagonal pairs
            for (std::size_t lin = 0; lin < np; ++lin) {
                const auto xi = grid.wavevector(lin);
                p[lin] += -w * xi[i] * xi[j] * mask[lin] * scratch[lin];
            }
        }
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = grid.wavevector(lin);
        const double mag2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        p[lin] = mag2 == 0.0 ? Complex(0.0, 0.0) : p[lin] / mag2;
    }
    return p;
}

SpectralField nonlinear_fourier_term(const SpectralField& u) {
    const Grid& grid = u.grid;
    const std::size_t np = grid.points();
    SpectralField h = convection_spectral(u);
    const std::vector<Complex> p = pressure_from_velocity(u);
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = grid.wavevector(lin);
        for (int c = 0; c < 3; ++c) {
            Complex& hc = h.coeffs[c * np + lin];
            hc = -hc - Complex(0.0, xi[c]) * p[lin];
        }
    }
    return h;
}

}  // namespace fns
