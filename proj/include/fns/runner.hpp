#ifndef FNS_RUNNER_HPP
#define FNS_RUNNER_HPP

#include <filesystem>
#include <optional>

#include "fns/config.hpp"
#include "fns/decay.hpp"

namespace fns {

struct RunResult {
    RunConfig config;  // resolved copy
    NormSeries series;
    std::vector<int> fit_m;  // orders fitted, aligned with fits/verdicts
    std::vector<DecayFit> fits;
    std::vector<Verdict> verdicts;
    std::vector<double> c_star;  // envelope ratio per sample
    EnergyBudget budget;
    double transfer_integral = 0.0;  // gross nonlinear power, time-integrated
    double window_lo = 0.0, window_hi = 0.0;
    bool blew_up = false;
    double blowup_t = 0.0;
    std::string fit_error;
    int exit_code = 0;  // 0 pass, 1 verdict fail, 3 blow-up
};

/// Initial field per the config (no Galerkin truncation applied here).
SpectralField build_initial_field(const RunConfig& cfg, const Grid& grid);

/// Heat-oracle diagnostics of u0 at the given times, computed per mode with
/// no time stepping. Also fills shell energies, g(t) and envelope ratios.
NormSeries heat_series_from_field(const SpectralField& u0, const SimParams& params,
                                  const std::vector<double>& times,
                                  const std::vector<int>& m_list,
                                  std::vector<double>* c_star_out = nullptr);

std::vector<double> geometric_times(double t_first, double t_end, int count);

/// Galerkin run. Writes series.csv, report.json, config.json and snapshots
/// into out_dir when given; artifacts are byte-deterministic for a fixed
/// config in single-threaded mode.
RunResult run_simulate(const RunConfig& cfg,
                       const std::optional<std::filesystem::path>& out_dir);

/// Exact-semigroup run with the same artifact layout.
RunResult run_heat(const RunConfig& cfg, const std::optional<std::filesystem::path>& out_dir);

struct SweepRow {
    int index = 0;
    double p = 0.0, alpha = 0.0;
    int m = 0;
    std::string criticality;
    double predicted = 0.0, fitted = 0.0, deviation = 0.0;
    bool window_valid = false;
    std::string claim;
    bool pass = false;
    std::string error;  // empty when the run succeeded
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int exit_code = 0;
};

/// Runs base-config variants (one per entry of cfg.sweep), each in its own
/// subdirectory, up to `threads` at a time. Partial failures land in the
/// affected row and the sweep continues.
SweepResult run_sweep(const RunConfig& base, const std::filesystem::path& out_dir, int threads);

void write_series_csv(const NormSeries& series, const std::filesystem::path& path);
void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path);

}  // namespace fns

#endif
