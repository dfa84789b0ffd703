#include "fns/heat.hpp"

#include <cmath>
#include <stdexcept>

namespace fns {

namespace {
constexpr double kEps = 1e-9;
bool near(double a, double b) { return std::abs(a - b) <= kEps * std::max(1.0, std::abs(b)); }
}  // namespace

SpectralField heat_evolve(const SpectralField& u0, double t, double alpha, double nu) {
    if (t < 0.0) throw std::invalid_argument("heat_evolve: t must be >= 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("heat_evolve: alpha must be > 0");
    SpectralField v(u0.grid);
    const std::size_t np = u0.grid.points();
    std::vector<double> decay(np);
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = u0.grid.wavevector(lin);
        const double mag2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        const double sym = mag2 == 0.0 ? 0.0 : std::pow(mag2, alpha);
        decay[lin] = std::exp(-nu * sym * t);
    }
    for (int c = 0; c < 3; ++c) {
        const Complex* src = u0.coeffs.data() + c * np;
        Complex* dst = v.coeffs.data() + c * np;
        for (std::size_t lin = 0; lin < np; ++lin) dst[lin] = src[lin] * decay[lin];
    }
    return v;
}

double predicted_exponent(double p, double alpha, int m) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("predicted_exponent: p in [1,2]");
    if (!(alpha > 0.0)) throw std::invalid_argument("predicted_exponent: alpha > 0");
    if (m < 0) throw std::invalid_argument("predicted_exponent: m >= 0");
    return (3.0 / (2.0 * alpha)) * (2.0 / p - 1.0) + static_cast<double>(m) / alpha;
}

CriticalityReport classify_criticality(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("classify_criticality: alpha > 0");
    const double scaling = 4.0 * alpha - 5.0;
    if (near(alpha, 1.25)) return {Criticality::critical, scaling};
    return {alpha < 1.25 ? Criticality::supercritical : Criticality::subcritical, scaling};
}

std::vector<DecayClaim> theorem_applicability(double p, double alpha) {
    if (!(p >= 1.0 && p <= 2.0) || !(alpha > 0.0)) {
        throw std::invalid_argument("theorem_applicability: need p in [1,2], alpha > 0");
    }
    std::vector<DecayClaim> out;
    const bool p_strict = p < 2.0 - kEps;

    // L2-level decay for weak solutions.
    if (alpha <= 1.0 + kEps && p_strict) {
        out.push_back({"l2-weak-decay-low-alpha", 0, false});
    }
    if (alpha >= 1.0 - kEps && alpha < 1.25 - kEps) {
        const double pmin = 1.0 / (3.0 - 2.0 * alpha);
        if (p >= pmin - kEps && p_strict) {
            out.push_back({"l2-weak-decay-high-alpha", 0, near(p, pmin)});
        }
    }

    // Derivative decay for the small-data smooth solution.
    if (alpha <= 1.0 + kEps && near(p, 1.0)) {
        out.push_back({"deriv-decay-l1-data", 1, false});
    }
    if (alpha >= 1.0 - kEps && alpha < 1.25 - kEps) {
        const double pmin = 1.0 / (3.0 - 2.0 * alpha);
        if (p >= pmin - kEps && p_strict) {
            out.push_back({"deriv-decay-lp-data-high-alpha", 1, near(p, pmin)});
        }
    }
    if (alpha <= 0.5 + kEps) {
        const double pmax = 6.0 / (4.0 * alpha + 3.0);
        if (p <= pmax + kEps) {
            out.push_back({"deriv-decay-lp-data-tiny-alpha", 1, near(p, pmax)});
        }
    } else if (alpha <= 1.0 + kEps) {
        const double pmax = 6.0 / (4.0 * alpha + 1.0);
        if (p <= pmax + kEps) {
            out.push_back({"deriv-decay-lp-data-low-alpha", 1, near(p, pmax)});
        }
    }

    // Sobolev-level decay for the small-data solution.
    if (alpha <= 1.0 + kEps && p_strict) {
        out.push_back({"sobolev-decay-small-data-low-alpha", 0, false});
    }
    if (alpha >= 1.0 - kEps && alpha < 1.25 - kEps) {
        const double pmin = 1.0 / (3.0 - 2.0 * alpha);
        if (p >= pmin - kEps && p_strict) {
            out.push_back({"sobolev-decay-small-data-high-alpha", 0, near(p, pmin)});
        }
    }
    return out;
}

std::string governing_claim(double p, double alpha, int m) {
    const auto claims = theorem_applicability(p, alpha);
    if (m == 0) {
        for (const char* want : {"l2-weak-decay-low-alpha", "l2-weak-decay-high-alpha"}) {
            for (const auto& c : claims) {
                if (c.label == want) return c.label;
            }
        }
        return "none";
    }
    for (const char* want : {"deriv-decay-l1-data", "deriv-decay-lp-data-high-alpha",
                             "deriv-decay-lp-data-tiny-alpha", "deriv-decay-lp-data-low-alpha"}) {
        for (const auto& c : claims) {
            if (c.label == want) return c.label;
        }
    }
    return "none";
}

double valid_window_end(double gamma, double alpha, double dxi) {
    if (!(gamma > 0.0) || !(alpha > 0.0) || !(dxi > 0.0)) {
        throw std::invalid_argument("valid_window_end: gamma, alpha, dxi must be positive");
    }
    return gamma / std::pow(4.0 * dxi, 2.0 * alpha) - 1.0;
}

}  // namespace fns
