#ifndef FNS_HEAT_HPP
#define FNS_HEAT_HPP

#include <string>
#include <vector>

#include "fns/field.hpp"

namespace fns {

/// Exact solution of v_t + nu*Lambda^{2*alpha} v = 0 at time t: per-mode
/// multiplication by exp(-nu*|xi|^{2*alpha}*t). No time-stepping error.
SpectralField heat_evolve(const SpectralField& u0, double t, double alpha, double nu);

/// Decay exponent of the squared L^2 norm for data emulating L^p membership:
/// rho = (3/(2*alpha))*(2/p - 1) + m/alpha, so ||D^m u||_2^2 ~ (t+1)^{-rho}.
double predicted_exponent(double p, double alpha, int m);

enum class Criticality { supercritical, critical, subcritical };

struct CriticalityReport {
    Criticality kind;
    double scaling_exponent;  // 4*alpha - 5, the energy scaling power
};

/// alpha < 5/4 supercritical, = 5/4 critical, > 5/4 subcritical.
CriticalityReport classify_criticality(double alpha);

/// One decay statement whose hypotheses a (p, alpha) pair may satisfy.
struct DecayClaim {
    std::string label;      // content-derived name of the statement
    int min_deriv_order;    // 0 for L2-level claims, 1 for derivative claims
    bool boundary;          // true when (p, alpha) sits on a hypothesis boundary
};

/// All decay statements whose hypotheses hold at (p, alpha). Empty means no
/// claim applies (e.g. p = 2, where the predicted rate is zero anyway).
std::vector<DecayClaim> theorem_applicability(double p, double alpha);

/// Label of the claim governing a run at (p, alpha, m); "none" if no claim.
std::string governing_claim(double p, double alpha, int m);

/// Range of t over which algebraic decay is observable on a finite box:
/// requires the splitting radius to resolve several lattice shells,
/// g(t) >= 4*(2*pi/L). Returns the largest valid t (the window closes there).
double valid_window_end(double gamma, double alpha, double dxi);

}  // namespace fns

#endif
