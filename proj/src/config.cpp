#include "fns/config.hpp"

#include <cmath>
#include <fstream>

#include "fns/grid.hpp"
#include "fns/heat.hpp"

namespace fns {

using nlohmann::json;

void RunConfig::finalize() {
    if (schema_version != 1) {
        throw std::invalid_argument("config: unsupported schema_version");
    }
    if (mode != "simulate" && mode != "heat") {
        throw std::invalid_argument("config: mode must be 'simulate' or 'heat'");
    }
    if (initial_kind != "spectrum" && initial_kind != "taylor_green") {
        throw std::invalid_argument("config: unknown initial_data kind");
    }
    const Grid grid = make_grid(n, box_length);  // validates n, L

    if (std::isnan(spectrum.sigma)) spectrum.sigma = sigma_for_p(p);
    if (initial_kind == "spectrum") params.amplitude = spectrum.amplitude;

    if (params.cutoff_n <= 0.0) params.cutoff_n = grid.dealias_radius();
    if (mode == "simulate") {
        params.validate(grid);
    } else {
        if (!(params.t_end > 0.0)) throw std::invalid_argument("config: t_end must be > 0");
        if (!(params.alpha > 0.0)) throw std::invalid_argument("config: alpha must be > 0");
        if (!(params.nu >= 0.0)) throw std::invalid_argument("config: nu must be >= 0");
        if (!(params.gamma > 0.0)) throw std::invalid_argument("config: gamma must be > 0");
        if (heat_samples < 2) throw std::invalid_argument("config: heat_samples >= 2");
        if (!(heat_t_first > 0.0) || heat_t_first >= params.t_end) {
            throw std::invalid_argument("config: need 0 < heat_t_first < t_end");
        }
    }
    if (sample_stride < 1) throw std::invalid_argument("config: sample_stride >= 1");
    for (int m : m_list) {
        if (m < 0) throw std::invalid_argument("config: m_list entries must be >= 0");
    }
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("config: p must lie in [1, 2]");
    if (fit_t_hi != 0.0 && !(fit_t_hi > fit_t_lo)) {
        throw std::invalid_argument("config: fit window must satisfy t_hi > t_lo");
    }
    if (!(tol_exponent > 0.0) || !(tol_gap > 0.0)) {
        throw std::invalid_argument("config: tolerances must be positive");
    }
    if (snapshot_stride < 0) throw std::invalid_argument("config: snapshot_stride >= 0");
}

json RunConfig::to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["mode"] = mode;
    j["grid"] = {{"n", n}, {"box_length", box_length}};
    j["params"] = {{"alpha", params.alpha},   {"nu", params.nu},
                   {"dt", params.dt},         {"t_end", params.t_end},
                   {"cutoff_n", params.cutoff_n}, {"gamma", params.gamma},
                   {"amplitude", params.amplitude}};
    j["initial_data"] = {{"kind", initial_kind},
                         {"sigma", spectrum.sigma},
                         {"xi_knee", spectrum.xi_knee},
                         {"high_decay", spectrum.high_decay},
                         {"amplitude", spectrum.amplitude},
                         {"seed", spectrum.seed},
                         {"support_radius", spectrum.support_radius}};
    j["p"] = p;
    j["sampling"] = {{"sample_stride", sample_stride},
                     {"heat_samples", heat_samples},
                     {"heat_t_first", heat_t_first},
                     {"m_list", m_list}};
    j["fit"] = {{"t_lo", fit_t_lo},
                {"t_hi", fit_t_hi},
                {"tol_exponent", tol_exponent},
                {"tol_gap", tol_gap}};
    j["output"] = {{"out_dir", out_dir},
                   {"snapshot_final", snapshot_final},
                   {"snapshot_stride", snapshot_stride},
                   {"track_transfer", track_transfer}};
    if (!sweep.empty()) j["sweep"] = sweep;
    return j;
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    c.schema_version = j.value("schema_version", 1);
    c.mode = j.value("mode", std::string("simulate"));
    if (j.contains("grid")) {
        c.n = j["grid"].value("n", c.n);
        c.box_length = j["grid"].value("box_length", c.box_length);
    }
    if (j.contains("params")) {
        const json& p = j["params"];
        c.params.alpha = p.value("alpha", c.params.alpha);
        c.params.nu = p.value("nu", c.params.nu);
        c.params.dt = p.value("dt", c.params.dt);
        c.params.t_end = p.value("t_end", c.params.t_end);
        c.params.cutoff_n = p.value("cutoff_n", c.params.cutoff_n);
        c.params.gamma = p.value("gamma", c.params.gamma);
        c.params.amplitude = p.value("amplitude", c.params.amplitude);
    }
    if (j.contains("initial_data")) {
        const json& s = j["initial_data"];
        c.initial_kind = s.value("kind", c.initial_kind);
        c.spectrum.sigma = s.value("sigma", std::nan(""));  // default: derive from p
        c.spectrum.xi_knee = s.value("xi_knee", c.spectrum.xi_knee);
        c.spectrum.high_decay = s.value("high_decay", c.spectrum.high_decay);
        c.spectrum.amplitude = s.value("amplitude", c.spectrum.amplitude);
        c.spectrum.seed = s.value("seed", c.spectrum.seed);
        c.spectrum.support_radius = s.value("support_radius", c.spectrum.support_radius);
    } else {
        c.spectrum.sigma = std::nan("");
    }
    c.p = j.value("p", c.p);
    if (j.contains("sampling")) {
        const json& s = j["sampling"];
        c.sample_stride = s.value("sample_stride", c.sample_stride);
        c.heat_samples = s.value("heat_samples", c.heat_samples);
        c.heat_t_first = s.value("heat_t_first", c.heat_t_first);
        c.m_list = s.value("m_list", c.m_list);
    }
    if (j.contains("fit")) {
        const json& f = j["fit"];
        c.fit_t_lo = f.value("t_lo", c.fit_t_lo);
        c.fit_t_hi = f.value("t_hi", c.fit_t_hi);
        c.tol_exponent = f.value("tol_exponent", c.tol_exponent);
        c.tol_gap = f.value("tol_gap", c.tol_gap);
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        c.out_dir = o.value("out_dir", c.out_dir);
        c.snapshot_final = o.value("snapshot_final", c.snapshot_final);
        c.snapshot_stride = o.value("snapshot_stride", c.snapshot_stride);
        c.track_transfer = o.value("track_transfer", c.track_transfer);
    }
    if (j.contains("sweep")) {
        c.sweep = j["sweep"].get<std::vector<json>>();
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path.string());
    json j;
    is >> j;
    RunConfig c = RunConfig::from_json(j);
    c.finalize();
    return c;
}

void save_config(const RunConfig& cfg, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("config: cannot write " + path.string());
    os << cfg.to_json().dump(2) << "\n";
}

RunConfig apply_overrides(const RunConfig& base, const json& patch) {
    json merged = base.to_json();
    // Overriding p re-derives sigma unless the patch pins sigma itself.
    const bool pins_sigma =
        patch.contains("initial_data") && patch["initial_data"].contains("sigma");
    if (patch.contains("p") && !pins_sigma) {
        merged["initial_data"].erase("sigma");
    }
    merged.merge_patch(patch);
    RunConfig c = RunConfig::from_json(merged);
    c.finalize();
    return c;
}

}  // namespace fns
