#ifndef FNS_DYNAMICS_HPP
#define FNS_DYNAMICS_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "fns/field.hpp"

namespace fns {

struct SimParams {
    double alpha = 1.0;
    double nu = 1.0;
    double dt = 0.0;
    double t_end = 0.0;
    double cutoff_n = 0.0;    // Galerkin radius N in wavenumber units
    double gamma = 3.0;       // splitting-shell constant
    double amplitude = 1.0;   // initial-data scale

    void validate(const Grid& grid) const;
};

struct SimState {
    double t = 0.0;
    SpectralField u;

    SimState(double time, SpectralField field) : t(time), u(std::move(field)) {}
};

/// Thrown when a trajectory produces non-finite coefficients; carries the
/// last time at which the state was still finite.
struct BlowUpError : std::runtime_error {
    double last_finite_t;
    explicit BlowUpError(double t)
        : std::runtime_error("trajectory produced non-finite values"), last_finite_t(t) {}
};

/// Truncated, projected convection term -P J_N (u . grad u).
///
/// Gradients are formed spectrally (multiplier i*xi_j), products pointwise at
/// collocation points, and the result is transformed back, 2/3-rule
/// dealiased, radially truncated to |xi| <= N, and Leray-projected. For
/// fields supported inside the dealias band the retained modes match the
/// exact convolution sum.
SpectralField nonlinear_rhs(const SpectralField& u, const SimParams& params);

/// One step of the integrating-factor Heun scheme. With E(s) = exp(-nu
/// |xi|^{2a} s) per mode and H the truncated nonlinearity:
///   predictor  u~  = E(dt) (u + dt H(u))
///   corrector  u+  = E(dt) u + (dt/2) (E(dt) H(u) + H(u~))
/// The linear part is integrated exactly; divergence-freeness and the
/// cutoff are preserved mode by mode. Throws BlowUpError on NaN/Inf.
SimState step(SimState state, const SimParams& params);

struct EnergyBudget {
    std::vector<double> times;
    std::vector<double> kinetic;     // ||u(t)||_2^2
    std::vector<double> dissipated;  // 2*nu*int_0^t ||Lambda^a u||_2^2 ds (trapezoid)
    std::vector<double> defect;      // kinetic + dissipated - kinetic(0)
};

/// Budget from per-sample norms: times paired with ||u||_2^2 and the
/// dissipation density 2*nu*||Lambda^a u||_2^2.
EnergyBudget energy_budget(std::span<const double> times, std::span<const double> kinetic,
                           std::span<const double> diss_density);

/// Convenience overload computing the norms from stored states.
EnergyBudget energy_budget(std::span<const SimState> states, const SimParams& params);

/// Pressure from the velocity via the spectral Poisson relation
/// p_hat = -xi_i xi_j (u_i u_j)_hat / |xi|^2, with p_hat(0) = 0.
/// Products are formed pointwise and dealiased like the convection term.
std::vector<Complex> pressure_from_velocity(const SpectralField& u);

/// Fourier-side forcing H = -(u . grad u)_hat - (grad p)_hat; equals the
/// Leray-projected convection term when div u = 0.
SpectralField nonlinear_fourier_term(const SpectralField& u);

}  // namespace fns

#endif
