#include "fns/decay.hpp"

#include <cmath>
#include <stdexcept>

#include "fns/heat.hpp"

namespace fns {

void NormSeries::validate() const {
    const std::size_t n = times.size();
    auto check = [n](const std::vector<double>& v, const char* name) {
        if (v.size() != n) throw std::invalid_argument(std::string("series: ragged ") + name);
        for (double x : v) {
            if (!std::isfinite(x) || x < 0.0) {
                throw std::invalid_argument(std::string("series: bad value in ") + name);
            }
        }
    };
    for (std::size_t i = 1; i < n; ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("series: times must be strictly increasing");
        }
    }
    check(l2_sq, "l2_sq");
    if (!diss_density.empty()) check(diss_density, "diss_density");
    if (!diss_integral.empty()) check(diss_integral, "diss_integral");
    if (!shell_energy.empty()) check(shell_energy, "shell_energy");
    if (!g_t.empty()) check(g_t, "g_t");
    if (deriv_sq.size() != m_list.size()) {
        throw std::invalid_argument("series: deriv_sq does not match m_list");
    }
    for (const auto& d : deriv_sq) check(d, "deriv_sq");
}

double splitting_radius(double t, double gamma, double alpha) {
    if (t < 0.0) throw std::invalid_argument("splitting_radius: t >= 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("splitting_radius: gamma > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("splitting_radius: alpha > 0");
    return std::pow(gamma / (t + 1.0), 1.0 / (2.0 * alpha));
}

double shell_energy(const SpectralField& u, double radius) {
    if (radius < 0.0) throw std::invalid_argument("shell_energy: radius >= 0");
    const std::size_t np = u.grid.points();
    const double r2 = radius * radius;
    double s = 0.0;
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = u.grid.wavevector(lin);
        const double mag2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (mag2 <= r2) {
            s += std::norm(u.at(0, lin)) + std::norm(u.at(1, lin)) + std::norm(u.at(2, lin));
        }
    }
    const double L = u.grid.length();
    return L * L * L * s;
}

double spectral_bound_ratio(const SpectralField& u_t, const SpectralField& u0, double alpha) {
    require_same_grid(u_t.grid, u0.grid, "spectral_bound_ratio");
    const std::size_t np = u_t.grid.points();
    double worst = 0.0;
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = u_t.grid.wavevector(lin);
        const double mag2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (mag2 == 0.0) continue;
        const double mod_t = std::sqrt(std::norm(u_t.at(0, lin)) + std::norm(u_t.at(1, lin)) +
                                       std::norm(u_t.at(2, lin)));
        if (mod_t == 0.0) continue;
        const double mod_0 = std::sqrt(std::norm(u0.at(0, lin)) + std::norm(u0.at(1, lin)) +
                                       std::norm(u0.at(2, lin)));
        const double envelope = mod_0 + std::pow(mag2, 0.5 * (1.0 - 2.0 * alpha));
        worst = std::max(worst, mod_t / envelope);
    }
    return worst;
}

DecayFit fit_power_law(std::span<const double> times, std::span<const double> values,
                       double window_lo, double window_hi, const WindowRule& rule) {
    if (times.size() != values.size()) throw std::invalid_argument("fit: size mismatch");
    if (!(window_hi > window_lo)) throw std::invalid_argument("fit: empty window");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < window_lo || t > window_hi) continue;
        if (!(values[i] > 0.0)) {
            throw std::invalid_argument("fit: nonpositive value inside window");
        }
        const double x = std::log(t + 1.0);
        const double y = std::log(values[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 8) throw std::invalid_argument("fit: need >= 8 samples in window");

    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double icept = (sy - slope * sx) / n;

    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < window_lo || t > window_hi) continue;
        const double x = std::log(t + 1.0);
        const double y = std::log(values[i]);
        const double r = y - (icept + slope * x);
        ss_res += r * r;
        ss_tot += (y - ymean) * (y - ymean);
    }

    DecayFit fit;
    fit.exponent = -slope;
    fit.intercept = std::exp(icept);
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;
    fit.n_samples = n;
    fit.window_valid =
        rule.dxi > 0.0 &&
        splitting_radius(window_hi, rule.gamma, rule.alpha) >= 4.0 * rule.dxi;
    return fit;
}

DecayFit fit_decay_exponent(const NormSeries& series, int m, double window_lo, double window_hi,
                            const WindowRule& rule) {
    series.validate();
    if (m < 0) return fit_power_law(series.times, series.l2_sq, window_lo, window_hi, rule);
    for (std::size_t i = 0; i < series.m_list.size(); ++i) {
        if (series.m_list[i] == m) {
            return fit_power_law(series.times, series.deriv_sq[i], window_lo, window_hi, rule);
        }
    }
    if (m == 0) return fit_power_law(series.times, series.l2_sq, window_lo, window_hi, rule);
    throw std::invalid_argument("fit_decay_exponent: derivative order not tracked");
}

Verdict compare_to_theory(const DecayFit& fit, double p, double alpha, int m, double tolerance) {
    Verdict v;
    v.predicted = predicted_exponent(p, alpha, m);
    v.fitted = fit.exponent;
    v.tolerance = tolerance;
    v.window_valid = fit.window_valid;
    v.claim = governing_claim(p, alpha, m);
    if (v.predicted == 0.0) {
        // No decay is claimed (p = 2): report without judging.
        v.applicable = false;
        v.deviation = 0.0;
        v.pass = true;
        return v;
    }
    v.applicable = v.claim != "none" || m == 0;
    v.deviation = std::abs(v.fitted - v.predicted) / v.predicted;
    v.pass = v.deviation <= tolerance;
    return v;
}

NormSeries derivative_series(std::span<const SimState> states, std::span<const int> m_list) {
    NormSeries s;
    s.m_list.assign(m_list.begin(), m_list.end());
    s.deriv_sq.resize(m_list.size());
    for (const SimState& st : states) {
        s.times.push_back(st.t);
        s.l2_sq.push_back(l2_sq(st.u));
        for (std::size_t i = 0; i < s.m_list.size(); ++i) {
            const int m = s.m_list[i];
            s.deriv_sq[i].push_back(m == 0 ? s.l2_sq.back()
                                           : sobolev_seminorm_sq(st.u, static_cast<double>(m)));
        }
    }
    s.validate();
    return s;
}

}  // namespace fns
