#ifndef FNS_CONFIG_HPP
#define FNS_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fns/dynamics.hpp"
#include "fns/initial_data.hpp"

namespace fns {

/// One run, fully specified. Serialized as UTF-8 JSON (schema_version 1);
/// loading and saving round-trips losslessly.
struct RunConfig {
    int schema_version = 1;
    std::string mode = "simulate";  // "simulate" or "heat"

    int n = 32;
    double box_length = 200.0;

    SimParams params;

    std::string initial_kind = "spectrum";  // "spectrum" or "taylor_green"
    SpectrumSpec spectrum;
    double p = 1.0;  // Lebesgue exponent the spectrum emulates

    // sampling
    int sample_stride = 50;     // simulate: record every k-th step
    int heat_samples = 120;     // heat: log-spaced sample count
    double heat_t_first = 0.1;  // heat: first nonzero sample time
    std::vector<int> m_list;    // derivative orders to track

    // fitting (0 = derive from the validity rule)
    double fit_t_lo = 0.0;
    double fit_t_hi = 0.0;
    double tol_exponent = 0.10;
    double tol_gap = 0.15;

    // outputs
    std::string out_dir = "out";
    bool snapshot_final = false;
    int snapshot_stride = 0;  // 0 = none
    bool track_transfer = true;

    std::vector<nlohmann::json> sweep;  // per-run overrides for `sweep`

    /// Fills derived defaults (sigma from p when unset, cutoff radius) and
    /// checks every module precondition that is knowable without running.
    void finalize();

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& cfg, const std::filesystem::path& path);

/// Applies a JSON merge-patch of overrides onto a base config.
RunConfig apply_overrides(const RunConfig& base, const nlohmann::json& patch);

}  // namespace fns

#endif
