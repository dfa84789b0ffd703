#include "fns/runner.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "fns/heat.hpp"
#include "fns/multipliers.hpp"
#include "fns/snapshot.hpp"

namespace fns {

using nlohmann::json;

namespace {

// shortest decimal that round-trips to the same double
std::string fmt(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

json fit_to_json(int m, const DecayFit& f) {
    return json{{"m", m},
                {"exponent", f.exponent},
                {"intercept", f.intercept},
                {"r_squared", f.r_squared},
                {"window_lo", f.window_lo},
                {"window_hi", f.window_hi},
                {"window_valid", f.window_valid},
                {"n_samples", f.n_samples}};
}

json verdict_to_json(int m, const Verdict& v) {
    return json{{"m", m},
                {"predicted", v.predicted},
                {"fitted", v.fitted},
                {"deviation", v.deviation},
                {"tolerance", v.tolerance},
                {"pass", v.pass},
                {"applicable", v.applicable},
                {"window_valid", v.window_valid},
                {"claim", v.claim}};
}

void write_report(const RunResult& r, const std::filesystem::path& path) {
    json rep;
    rep["blew_up"] = r.blew_up;
    if (r.blew_up) rep["last_finite_t"] = r.blowup_t;
    rep["window"] = {{"t_lo", r.window_lo},
                     {"t_hi", r.window_hi},
                     {"gamma", r.config.params.gamma},
                     {"gamma_is_free_choice", true}};
    rep["fits"] = json::array();
    rep["verdicts"] = json::array();
    for (std::size_t i = 0; i < r.fits.size(); ++i) {
        rep["fits"].push_back(fit_to_json(r.fit_m[i], r.fits[i]));
        rep["verdicts"].push_back(verdict_to_json(r.fit_m[i], r.verdicts[i]));
    }
    if (!r.fit_error.empty()) rep["fit_error"] = r.fit_error;
    if (!r.budget.times.empty()) {
        double max_defect = 0.0;
        for (double d : r.budget.defect) max_defect = std::max(max_defect, std::abs(d));
        rep["energy_budget"] = {{"kinetic_initial", r.budget.kinetic.front()},
                                {"kinetic_final", r.budget.kinetic.back()},
                                {"dissipated_final", r.budget.dissipated.back()},
                                {"defect_final", r.budget.defect.back()},
                                {"defect_max_abs", max_defect}};
    }
    rep["transfer_integral"] = r.transfer_integral;
    if (!r.budget.dissipated.empty() && r.budget.dissipated.back() > 0.0) {
        rep["transfer_over_dissipation"] = r.transfer_integral / r.budget.dissipated.back();
    }
    if (!r.c_star.empty()) {
        rep["c_star"] = r.c_star;
    }
    rep["exit_code"] = r.exit_code;
    std::ofstream os(path);
    os << rep.dump(2) << "\n";
}

void finish_fits(RunResult& r) {
    const RunConfig& cfg = r.config;
    const double dxi = 2.0 * std::numbers::pi / cfg.box_length;
    const WindowRule rule{cfg.params.gamma, cfg.params.alpha, dxi};

    const double t_valid = valid_window_end(cfg.params.gamma, cfg.params.alpha, dxi);
    const double t_last = r.series.times.empty() ? 0.0 : r.series.times.back();
    double hi = cfg.fit_t_hi > 0.0 ? cfg.fit_t_hi : std::min(t_valid, t_last);
    double lo = cfg.fit_t_hi > 0.0 ? cfg.fit_t_lo : std::max(10.0, hi / 10.0);
    r.window_lo = lo;
    r.window_hi = hi;

    if (!(hi > lo)) {
        r.fit_error = "fit window infeasible: the run is too short for the validity rule";
        return;
    }
    std::vector<int> orders = {0};
    for (int m : cfg.m_list) {
        if (m != 0) orders.push_back(m);
    }
    try {
        for (int m : orders) {
            const DecayFit fit = fit_decay_exponent(r.series, m, lo, hi, rule);
            const Verdict v =
                compare_to_theory(fit, cfg.p, cfg.params.alpha, m, cfg.tol_exponent);
            r.fit_m.push_back(m);
            r.fits.push_back(fit);
            r.verdicts.push_back(v);
        }
    } catch (const std::exception& e) {
        r.fit_error = e.what();
    }
    for (const Verdict& v : r.verdicts) {
        if (!v.pass) r.exit_code = std::max(r.exit_code, 1);
    }
}

void write_artifacts(const RunResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    save_config(r.config, dir / "config.json");
    write_series_csv(r.series, dir / "series.csv");
    write_report(r, dir / "report.json");
}

}  // namespace

SpectralField build_initial_field(const RunConfig& cfg, const Grid& grid) {
    if (cfg.initial_kind == "taylor_green") {
        return taylor_green_field(grid, cfg.params.amplitude);
    }
    return random_divfree_field(grid, cfg.spectrum);
}

std::vector<double> geometric_times(double t_first, double t_end, int count) {
    std::vector<double> ts;
    ts.reserve(count);
    for (int i = 0; i < count; ++i) {
        ts.push_back(t_first *
                     std::pow(t_end / t_first, static_cast<double>(i) / (count - 1)));
    }
    return ts;
}

NormSeries heat_series_from_field(const SpectralField& u0, const SimParams& params,
                                  const std::vector<double>& times,
                                  const std::vector<int>& m_list,
                                  std::vector<double>* c_star_out) {
    const Grid& grid = u0.grid;
    const std::size_t np = grid.points();
    const double vol = grid.length() * grid.length() * grid.length();

    // per-mode reductions: |u0|^2, |xi|^{2a}, |xi|^2 and envelope denominator
    std::vector<double> w0(np), sym(np), xi2(np), env(np);
    for (std::size_t lin = 0; lin < np; ++lin) {
        const auto xi = grid.wavevector(lin);
        const double mag2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        xi2[lin] = mag2;
        sym[lin] = mag2 == 0.0 ? 0.0 : std::pow(mag2, params.alpha);
        const double mod0 = std::sqrt(std::norm(u0.at(0, lin)) + std::norm(u0.at(1, lin)) +
                                      std::norm(u0.at(2, lin)));
        w0[lin] = mod0 * mod0;
        env[lin] =
            mag2 == 0.0 ? 0.0 : mod0 + std::pow(mag2, 0.5 * (1.0 - 2.0 * params.alpha));
    }

    NormSeries s;
    s.m_list = m_list;
    s.deriv_sq.resize(m_list.size());
    std::vector<double> diss;
    for (double t : times) {
        const double g = splitting_radius(t, params.gamma, params.alpha);
        const double g2 = g * g;
        double sum0 = 0.0, sum_d = 0.0, sum_shell = 0.0, cstar = 0.0;
        std::vector<double> sum_m(m_list.size(), 0.0);
        for (std::size_t lin = 0; lin < np; ++lin) {
            if (w0[lin] == 0.0) continue;
            const double decay = std::exp(-2.0 * params.nu * sym[lin] * t);
            const double wt = w0[lin] * decay;
            sum0 += wt;
            sum_d += sym[lin] * wt;
            if (xi2[lin] <= g2) sum_shell += wt;
            for (std::size_t i = 0; i < m_list.size(); ++i) {
                sum_m[i] += std::pow(xi2[lin], m_list[i]) * wt;
            }
            if (env[lin] > 0.0) {
                cstar = std::max(cstar, std::sqrt(wt) / env[lin]);
            }
        }
        s.times.push_back(t);
        s.l2_sq.push_back(vol * sum0);
        s.diss_density.push_back(2.0 * params.nu * vol * sum_d);
        s.shell_energy.push_back(vol * sum_shell);
        s.g_t.push_back(g);
        for (std::size_t i = 0; i < m_list.size(); ++i) {
            s.deriv_sq[i].push_back(vol * sum_m[i]);
        }
        if (c_star_out) c_star_out->push_back(cstar);
    }
    const EnergyBudget b = energy_budget(s.times, s.l2_sq, s.diss_density);
    s.diss_integral = b.dissipated;
    return s;
}

RunResult run_heat(const RunConfig& cfg, const std::optional<std::filesystem::path>& out_dir) {
    RunResult r;
    r.config = cfg;
    const Grid grid = make_grid(cfg.n, cfg.box_length);
    const SpectralField u0 = build_initial_field(cfg, grid);

    std::vector<double> times = {0.0};
    for (double t : geometric_times(cfg.heat_t_first, cfg.params.t_end, cfg.heat_samples)) {
        times.push_back(t);
    }
    r.series = heat_series_from_field(u0, cfg.params, times, cfg.m_list, &r.c_star);
    r.budget = energy_budget(r.series.times, r.series.l2_sq, r.series.diss_density);
    finish_fits(r);

    if (out_dir) {
        write_artifacts(r, *out_dir);
        if (cfg.snapshot_final) {
            const SpectralField uT =
                heat_evolve(u0, cfg.params.t_end, cfg.params.alpha, cfg.params.nu);
            write_snapshot(*out_dir / "final.fns1", uT, cfg.params.t_end, cfg.params.alpha);
        }
    }
    return r;
}

RunResult run_simulate(const RunConfig& cfg,
                       const std::optional<std::filesystem::path>& out_dir) {
    RunResult r;
    r.config = cfg;
    const Grid grid = make_grid(cfg.n, cfg.box_length);
    cfg.params.validate(grid);

    if (out_dir) std::filesystem::create_directories(*out_dir);

    SpectralField u0 = build_initial_field(cfg, grid);
    u0 = leray_project(spectral_cutoff(std::move(u0), cfg.params.cutoff_n));

    const long steps = std::lround(cfg.params.t_end / cfg.params.dt);
    SimState state(0.0, u0);
    std::vector<double> transfer_density;

    const auto sample = [&](const SimState& st) {
        const double g = splitting_radius(st.t, cfg.params.gamma, cfg.params.alpha);
        r.series.times.push_back(st.t);
        r.series.l2_sq.push_back(l2_sq(st.u));
        r.series.diss_density.push_back(2.0 * cfg.params.nu *
                                        sobolev_seminorm_sq(st.u, cfg.params.alpha));
        r.series.shell_energy.push_back(shell_energy(st.u, g));
        r.series.g_t.push_back(g);
        for (std::size_t i = 0; i < cfg.m_list.size(); ++i) {
            r.series.deriv_sq[i].push_back(
                cfg.m_list[i] == 0
                    ? r.series.l2_sq.back()
                    : sobolev_seminorm_sq(st.u, static_cast<double>(cfg.m_list[i])));
        }
        r.c_star.push_back(spectral_bound_ratio(st.u, u0, cfg.params.alpha));
        if (cfg.track_transfer) {
            const SpectralField rhs = nonlinear_rhs(st.u, cfg.params);
            const std::size_t np = grid.points();
            double gross = 0.0;
            for (std::size_t lin = 0; lin < np; ++lin) {
                double power = 0.0;
                for (int c = 0; c < 3; ++c) {
                    power +=
                        (std::conj(st.u.coeffs[c * np + lin]) * rhs.coeffs[c * np + lin])
                            .real();
                }
                gross += std::abs(power);
            }
            const double vol = grid.length() * grid.length() * grid.length();
            transfer_density.push_back(vol * gross);
        }
    };

    r.series.m_list = cfg.m_list;
    r.series.deriv_sq.resize(cfg.m_list.size());
    sample(state);
    try {
        for (long i = 1; i <= steps; ++i) {
            state = step(std::move(state), cfg.params);
            if (i % cfg.sample_stride == 0 || i == steps) sample(state);
            if (out_dir && cfg.snapshot_stride > 0 && i % cfg.snapshot_stride == 0) {
                std::ostringstream name;
                name << "step_" << i << ".fns1";
                write_snapshot(*out_dir / name.str(), state.u, state.t, cfg.params.alpha);
            }
        }
    } catch (const BlowUpError& e) {
        r.blew_up = true;
        r.blowup_t = e.last_finite_t;
        r.exit_code = 3;
    }

    r.budget = energy_budget(r.series.times, r.series.l2_sq, r.series.diss_density);
    r.series.diss_integral = r.budget.dissipated;
    if (cfg.track_transfer && transfer_density.size() == r.series.times.size()) {
        double acc = 0.0;
        for (std::size_t i = 1; i < transfer_density.size(); ++i) {
            acc += 0.5 * (r.series.times[i] - r.series.times[i - 1]) *
                   (transfer_density[i - 1] + transfer_density[i]);
        }
        r.transfer_integral = acc;
    }

    if (!r.blew_up) finish_fits(r);

    if (out_dir) {
        write_artifacts(r, *out_dir);
        if (cfg.snapshot_final && !r.blew_up) {
            write_snapshot(*out_dir / "final.fns1", state.u, state.t, cfg.params.alpha);
        }
    }
    return r;
}

SweepResult run_sweep(const RunConfig& base, const std::filesystem::path& out_dir,
                      int threads) {
    SweepResult result;
    const int rows = static_cast<int>(base.sweep.size());
    std::filesystem::create_directories(out_dir);

    std::vector<std::vector<SweepRow>> per_run(rows);
    const auto run_one = [&](int idx) {
        std::vector<SweepRow> out;
        SweepRow proto;
        proto.index = idx;
        try {
            RunConfig cfg = apply_overrides(base, base.sweep[idx]);
            cfg.sweep.clear();
            proto.p = cfg.p;
            proto.alpha = cfg.params.alpha;
            const auto crit = classify_criticality(cfg.params.alpha);
            proto.criticality = crit.kind == Criticality::critical ? "critical"
                                : crit.kind == Criticality::supercritical ? "supercritical"
                                                                          : "subcritical";
            std::ostringstream sub;
            sub << "run_" << idx;
            const RunResult r = cfg.mode == "heat"
                                    ? run_heat(cfg, out_dir / sub.str())
                                    : run_simulate(cfg, out_dir / sub.str());
            if (r.blew_up) {
                proto.error = "blow-up at t=" + fmt(r.blowup_t);
                out.push_back(proto);
                return out;
            }
            if (!r.fit_error.empty()) {
                proto.error = r.fit_error;
                out.push_back(proto);
                return out;
            }
            for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
                SweepRow row = proto;
                row.m = r.fit_m[i];
                row.predicted = r.verdicts[i].predicted;
                row.fitted = r.verdicts[i].fitted;
                row.deviation = r.verdicts[i].deviation;
                row.window_valid = r.verdicts[i].window_valid;
                row.claim = r.verdicts[i].claim;
                row.pass = r.verdicts[i].pass;
                out.push_back(row);
            }
        } catch (const std::exception& e) {
            proto.error = e.what();
            out.push_back(proto);
        }
        return out;
    };

    const int workers = std::max(1, threads);
    for (int start = 0; start < rows; start += workers) {
        const int end = std::min(rows, start + workers);
        std::vector<std::future<std::vector<SweepRow>>> futs;
        for (int i = start; i < end; ++i) {
            futs.push_back(std::async(workers == 1 ? std::launch::deferred
                                                   : std::launch::async,
                                      run_one, i));
        }
        for (int i = start; i < end; ++i) per_run[i] = futs[i - start].get();
    }

    int code = 0;
    for (const auto& rows_i : per_run) {
        for (const SweepRow& row : rows_i) {
            result.rows.push_back(row);
            if (!row.error.empty()) {
                code = std::max(code, row.error.rfind("blow-up", 0) == 0 ? 3 : 2);
            } else if (!row.pass) {
                code = std::max(code, 1);
            }
        }
    }
    result.exit_code = code;
    write_sweep_csv(result, out_dir / "sweep.csv");
    return result;
}

void write_series_csv(const NormSeries& series, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("csv: cannot write " + path.string());
    os << "t,l2_sq,diss_integral,shell_energy,g_t";
    for (int m : series.m_list) os << ",deriv" << m << "_sq";
    os << "\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        os << fmt(series.times[i]) << ',' << fmt(series.l2_sq[i]) << ','
           << fmt(series.diss_integral[i]) << ',' << fmt(series.shell_energy[i]) << ','
           << fmt(series.g_t[i]);
        for (std::size_t j = 0; j < series.m_list.size(); ++j) {
            os << ',' << fmt(series.deriv_sq[j][i]);
        }
        os << "\n";
    }
}

void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("csv: cannot write " + path.string());
    os << "row,p,alpha,m,criticality,predicted,fitted,deviation,window_valid,claim,pass,error\n";
    for (const SweepRow& r : sweep.rows) {
        std::string err = r.error;
        for (char& ch : err) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        os << r.index << ',' << fmt(r.p) << ',' << fmt(r.alpha) << ',' << r.m << ','
           << r.criticality << ',' << fmt(r.predicted) << ',' << fmt(r.fitted) << ','
           << fmt(r.deviation) << ',' << (r.window_valid ? 1 : 0) << ',' << r.claim << ','
           << (r.pass ? 1 : 0) << ',' << err << "\n";
    }
}

}  // namespace fns
