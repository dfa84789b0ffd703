#ifndef FNS_DECAY_HPP
#define FNS_DECAY_HPP

#include <span>
#include <string>
#include <vector>

#include "fns/dynamics.hpp"
#include "fns/field.hpp"

namespace fns {

/// Time-indexed diagnostics of one trajectory. All norms are squared.
struct NormSeries {
    std::vector<double> times;
    std::vector<double> l2_sq;          // ||u||_2^2
    std::vector<double> diss_density;   // 2*nu*||Lambda^a u||_2^2
    std::vector<double> diss_integral;  // trapezoid of diss_density from t0
    std::vector<double> shell_energy;   // energy within |xi| <= g(t)
    std::vector<double> g_t;            // splitting radius at each sample
    std::vector<int> m_list;            // derivative orders tracked
    std::vector<std::vector<double>> deriv_sq;  // one series per entry of m_list

    std::size_t size() const { return times.size(); }
    void validate() const;
};

/// Power-law fit of a squared norm: value ~ intercept * (t+1)^{-exponent}.
struct DecayFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool window_valid = false;  // splitting radius resolves >= 4 lattice shells
    int n_samples = 0;
};

/// Verdict of a fitted exponent against the predicted one.
struct Verdict {
    double predicted = 0.0;
    double fitted = 0.0;
    double deviation = 0.0;  // |fitted - predicted| / predicted
    double tolerance = 0.0;
    bool pass = false;
    bool applicable = true;  // false: no decay claim at this (p, alpha, m)
    bool window_valid = false;
    std::string claim;       // governing decay statement, or "none"
};

/// g(t) = (gamma/(t+1))^{1/(2*alpha)}.
double splitting_radius(double t, double gamma, double alpha);

/// L^3-weighted spectral energy in the ball |xi| <= radius.
double shell_energy(const SpectralField& u, double radius);

/// Envelope ratio max over modes xi != 0 of |u_hat(xi,t)| divided by
/// (|u0_hat(xi)| + |xi|^{1-2*alpha}). Stays <= 1 at t = 0 by construction.
double spectral_bound_ratio(const SpectralField& u_t, const SpectralField& u0, double alpha);

/// Parameters tying fit windows to the finite-box validity rule.
struct WindowRule {
    double gamma = 3.0;
    double alpha = 1.0;
    double dxi = 0.0;  // lattice spacing 2*pi/L
};

/// OLS of log(value) against log(t+1) over samples with t in
/// [window_lo, window_hi]. Requires >= 8 samples, all values positive.
DecayFit fit_power_law(std::span<const double> times, std::span<const double> values,
                       double window_lo, double window_hi, const WindowRule& rule);

/// Selects a series from a NormSeries: m < 0 picks l2_sq, m >= 0 picks the
/// derivative series of that order (m = 0 equals l2_sq when tracked).
DecayFit fit_decay_exponent(const NormSeries& series, int m, double window_lo, double window_hi,
                            const WindowRule& rule);

/// Compares a fit to the predicted exponent at (p, alpha, m).
Verdict compare_to_theory(const DecayFit& fit, double p, double alpha, int m, double tolerance);

/// Squared seminorm series ||Lambda^m u||_2^2 for each stored state.
NormSeries derivative_series(std::span<const SimState> states, std::span<const int> m_list);

}  // namespace fns

#endif
