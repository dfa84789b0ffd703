// fnslab: pseudo-spectral decay laboratory for the generalized
// incompressible Navier-Stokes equations with fractional dissipation.
//
// Subcommands: simulate, heat, sweep, check, predict.
// Exit codes: 0 all verdicts pass, 1 any fail, 2 config/IO error, 3 blow-up.

#include <CLI11.hpp>

#include <cstdio>
#include <optional>

#include "fns/heat.hpp"
#include "fns/multipliers.hpp"
#include "fns/runner.hpp"
#include "fns/snapshot.hpp"
#include "fns/transform.hpp"

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
};

fns::RunConfig load_with_overrides(const GlobalOpts& g) {
    fns::RunConfig cfg = fns::load_config(g.config_path);
    if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
    if (g.seed_set) {
        cfg.spectrum.seed = g.seed;
        cfg.finalize();
    }
    return cfg;
}

int print_run_summary(const fns::RunResult& r) {
    if (r.blew_up) {
        std::printf("blow-up: last finite state at t=%g\n", r.blowup_t);
        return 3;
    }
    if (!r.fit_error.empty()) {
        std::printf("note: %s\n", r.fit_error.c_str());
    }
    for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
        const fns::Verdict& v = r.verdicts[i];
        std::printf("m=%d predicted=%.6g fitted=%.6g deviation=%.2f%% window_valid=%d claim=%s %s\n",
                    r.fit_m[i], v.predicted, v.fitted, 100.0 * v.deviation,
                    v.window_valid ? 1 : 0, v.claim.c_str(),
                    v.applicable ? (v.pass ? "PASS" : "FAIL") : "no-claim");
    }
    return r.exit_code;
}

int cmd_check(const std::string& snapshot_path) {
    const fns::Snapshot snap = fns::read_snapshot(snapshot_path);
    const fns::SpectralField& u = snap.field;
    std::printf("snapshot: n=%d L=%g alpha=%g t=%g\n", u.grid.n(), u.grid.length(), snap.alpha,
                snap.t);

    int failures = 0;
    const auto report = [&](const char* name, bool ok, double value) {
        std::printf("[%s] %-28s %.3e\n", ok ? "PASS" : "FAIL", name, value);
        if (!ok) ++failures;
    };

    const bool finite = fns::all_finite(u);
    report("all coefficients finite", finite, finite ? 0.0 : 1.0);
    const double scale = std::max(1.0, fns::max_abs_coeff(u));
    const double herm = fns::hermitian_defect(u);
    report("hermitian symmetry", herm <= 1e-12 * scale, herm);
    const double div = fns::divergence_max(u);
    report("divergence-free", div <= 1e-12 * std::max(1.0, fns::divergence_scale(u)), div);
    double mean = 0.0;
    for (int c = 0; c < 3; ++c) mean += std::abs(u.at(c, u.grid.index(0, 0, 0)));
    report("mean mode zero", mean == 0.0, mean);

    // Parseval round-trip through the collocation grid
    const fns::PhysicalField f = fns::inverse_transform(u);
    const double spec = fns::l2_sq(u);
    const double phys = fns::physical_l2_sq(f);
    const double parseval = spec > 0.0 ? std::abs(spec - phys) / spec : 0.0;
    report("parseval round-trip", parseval <= 1e-10, parseval);

    return failures == 0 ? 0 : 1;
}

int cmd_predict(double p, double alpha, int m) {
    const double rho = fns::predicted_exponent(p, alpha, m);
    const auto crit = fns::classify_criticality(alpha);
    const char* kind = crit.kind == fns::Criticality::critical        ? "critical"
                       : crit.kind == fns::Criticality::supercritical ? "supercritical"
                                                                      : "subcritical";
    std::printf("p=%g alpha=%g m=%d\n", p, alpha, m);
    std::printf("predicted exponent of the squared L2 norm: %.6g\n", rho);
    std::printf("regime: %s (energy scaling exponent %.6g)\n", kind, crit.scaling_exponent);
    std::printf("governing claim: %s\n", fns::governing_claim(p, alpha, m).c_str());
    const auto claims = fns::theorem_applicability(p, alpha);
    if (claims.empty()) {
        std::printf("applicable statements: none\n");
    } else {
        std::printf("applicable statements:\n");
        for (const auto& c : claims) {
            std::printf("  - %s%s\n", c.label.c_str(), c.boundary ? " (boundary)" : "");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral decay laboratory for generalized Navier-Stokes"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--config", g.config_path, "run configuration (JSON)");
    app.add_option("--out", g.out_dir, "output directory override");
    auto* seed_opt = app.add_option("--seed", g.seed, "seed override (u64)");
    app.add_option("--threads", g.threads, "sweep worker count")->default_val(1);

    auto* sim = app.add_subcommand("simulate", "run the truncated system");
    auto* heat = app.add_subcommand("heat", "run the exact dissipative semigroup");
    auto* sweep = app.add_subcommand("sweep", "run every variant in the config's sweep list");

    auto* check = app.add_subcommand("check", "run the invariant suite on a snapshot");
    std::string snapshot_path;
    check->add_option("--snapshot", snapshot_path, "FNS1 snapshot path")->required();

    auto* predict = app.add_subcommand("predict", "print predicted decay exponent and claims");
    double p = 1.0, alpha = 1.0;
    int m = 0;
    predict->add_option("--p", p, "Lebesgue exponent in [1,2]")->required();
    predict->add_option("--alpha", alpha, "dissipation exponent")->required();
    predict->add_option("--m", m, "derivative order")->default_val(0);

    CLI11_PARSE(app, argc, argv);
    g.seed_set = seed_opt->count() > 0;

    try {
        if (sim->parsed() || heat->parsed() || sweep->parsed()) {
            if (g.config_path.empty()) {
                std::fprintf(stderr, "error: --config is required\n");
                return 2;
            }
            const fns::RunConfig cfg = load_with_overrides(g);
            if (sweep->parsed()) {
                const fns::SweepResult res = fns::run_sweep(cfg, cfg.out_dir, g.threads);
                std::printf("sweep: %zu rows -> %s/sweep.csv\n", res.rows.size(),
                            cfg.out_dir.c_str());
                return res.exit_code;
            }
            const fns::RunResult r = sim->parsed()
                                         ? fns::run_simulate(cfg, std::filesystem::path(cfg.out_dir))
                                         : fns::run_heat(cfg, std::filesystem::path(cfg.out_dir));
            return print_run_summary(r);
        }
        if (check->parsed()) return cmd_check(snapshot_path);
        if (predict->parsed()) return cmd_predict(p, alpha, m);
    } catch (const fns::BlowUpError& e) {
        std::fprintf(stderr, "blow-up: last finite state at t=%g\n", e.last_finite_t);
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
