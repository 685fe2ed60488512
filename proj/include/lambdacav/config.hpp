#pragma once
// Run configuration: a flat JSON document whose keys mirror SystemParams
// plus the run mode, grid specifications and output options. Unknown keys
// are rejected so a typo cannot silently fall back to a default.

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lambdacav/dynamics.hpp"
#include "lambdacav/params.hpp"
#include "lambdacav/sweep.hpp"

namespace lambdacav {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { eigen, steady, sweep1d, sweep2d, magic, g2tau };
enum class OutputFormat { csv, jsonl };

inline std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::eigen: return "eigen";
        case RunMode::steady: return "steady";
        case RunMode::sweep1d: return "sweep1d";
        case RunMode::sweep2d: return "sweep2d";
        case RunMode::magic: return "magic";
        case RunMode::g2tau: return "g2tau";
    }
    throw std::logic_error("unreachable");
}

inline RunMode run_mode_from_string(const std::string& s) {
    for (RunMode m : {RunMode::eigen, RunMode::steady, RunMode::sweep1d, RunMode::sweep2d,
                      RunMode::magic, RunMode::g2tau})
        if (to_string(m) == s) return m;
    throw ConfigError("unknown mode '" + s +
                      "' (expected eigen|steady|sweep1d|sweep2d|magic|g2tau)");
}

struct TauGridSpec {
    double tau_min = 1e-2;
    double tau_max = 20.0;
    int points = 200;
    bool log_spacing = true;

    std::vector<double> expand() const {
        if (log_spacing) return log_tau_grid(tau_min, tau_max, points);
        if (points < 2 || !(tau_max > 0)) throw ConfigError("tau_grid: need points >= 2, tau_max > 0");
        std::vector<double> g(std::size_t(points));
        for (int k = 0; k < points; ++k) g[std::size_t(k)] = tau_max * k / double(points - 1);
        return g;
    }

    bool operator==(const TauGridSpec&) const = default;
};

struct RunConfig {
    SystemParams params;  // defaults are the shipped profile
    RunMode mode = RunMode::sweep1d;
    Grid delta_p_grid{-20.0, 20.0, 0.05};
    Grid omega_L_grid{0.0, 15.0, 0.1};
    TauGridSpec tau_grid;
    int sectors = 4;            // eigen mode: blocks 1..sectors
    double photon_floor = 0.003;
    std::string out = "lambdacav_out";
    OutputFormat format = OutputFormat::csv;
    int workers = 4;

    void validate() const {
        params.validate();
        if (sectors < 1) throw ConfigError("sectors must be >= 1");
        if (photon_floor < 0) throw ConfigError("photon_floor must be >= 0");
        if (workers < 1) throw ConfigError("workers must be >= 1");
        if (out.empty()) throw ConfigError("out must be a nonempty path");
        try {
            (void)delta_p_grid.size();
            (void)omega_L_grid.size();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
};

inline bool operator==(const Grid& a, const Grid& b) {
    return a.start == b.start && a.stop == b.stop && a.step == b.step;
}

inline bool operator==(const SystemParams& a, const SystemParams& b) {
    return a.g == b.g && a.eta == b.eta && a.omega_L == b.omega_L && a.delta_p == b.delta_p &&
           a.delta_L == b.delta_L && a.gamma_ge == b.gamma_ge && a.gamma_me == b.gamma_me &&
           a.gamma_gm == b.gamma_gm && a.n_max == b.n_max;
}

inline bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.params == b.params && a.mode == b.mode && a.delta_p_grid == b.delta_p_grid &&
           a.omega_L_grid == b.omega_L_grid && a.tau_grid == b.tau_grid &&
           a.sectors == b.sectors && a.photon_floor == b.photon_floor && a.out == b.out &&
           a.format == b.format && a.workers == b.workers;
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known,
                                const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!known.contains(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
}

template <typename T>
inline void read_field(const nlohmann::json& j, const char* key, T& target) {
    if (!j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

inline Grid read_grid(const nlohmann::json& j, const std::string& name, Grid fallback) {
    if (!j.contains(name)) return fallback;
    const auto& g = j.at(name);
    if (!g.is_object()) throw ConfigError(name + " must be an object {start, stop, step}");
    reject_unknown_keys(g, {"start", "stop", "step"}, name);
    Grid out = fallback;
    read_field(g, "start", out.start);
    read_field(g, "stop", out.stop);
    read_field(g, "step", out.step);
    return out;
}

}  // namespace detail

inline RunConfig parse_config_json(const nlohmann::json& j,
                                   std::optional<RunMode> mode_override = std::nullopt) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    detail::reject_unknown_keys(
        j,
        {"mode", "g", "eta", "omega_L", "delta_p", "delta_L", "gamma_ge", "gamma_me", "gamma_gm",
         "n_max", "delta_p_grid", "omega_L_grid", "tau_grid", "sectors", "photon_floor", "out",
         "format", "workers"},
        "config");

    RunConfig c;
    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) throw ConfigError("field 'mode' must be a string");
        c.mode = run_mode_from_string(j.at("mode").get<std::string>());
    } else if (!mode_override) {
        throw ConfigError("missing required field: mode");
    }
    if (mode_override) c.mode = *mode_override;

    detail::read_field(j, "g", c.params.g);
    detail::read_field(j, "eta", c.params.eta);
    detail::read_field(j, "omega_L", c.params.omega_L);
    detail::read_field(j, "delta_p", c.params.delta_p);
    detail::read_field(j, "delta_L", c.params.delta_L);
    detail::read_field(j, "gamma_ge", c.params.gamma_ge);
    detail::read_field(j, "gamma_me", c.params.gamma_me);
    detail::read_field(j, "gamma_gm", c.params.gamma_gm);
    detail::read_field(j, "n_max", c.params.n_max);

    // the magic search defaults to the blue-detuned half plane
    const Grid dp_default =
        c.mode == RunMode::magic ? Grid{-20.0, 0.0, 0.05} : Grid{-20.0, 20.0, 0.05};
    c.delta_p_grid = detail::read_grid(j, "delta_p_grid", dp_default);
    c.omega_L_grid = detail::read_grid(j, "omega_L_grid", Grid{0.0, 15.0, 0.1});

    if (j.contains("tau_grid")) {
        const auto& t = j.at("tau_grid");
        if (!t.is_object()) throw ConfigError("tau_grid must be an object");
        detail::reject_unknown_keys(t, {"tau_min", "tau_max", "points", "spacing"}, "tau_grid");
        detail::read_field(t, "tau_min", c.tau_grid.tau_min);
        detail::read_field(t, "tau_max", c.tau_grid.tau_max);
        detail::read_field(t, "points", c.tau_grid.points);
        if (t.contains("spacing")) {
            const std::string s = t.at("spacing").get<std::string>();
            if (s == "log")
                c.tau_grid.log_spacing = true;
            else if (s == "linear")
                c.tau_grid.log_spacing = false;
            else
                throw ConfigError("tau_grid.spacing must be 'log' or 'linear'");
        }
    }

    detail::read_field(j, "sectors", c.sectors);
    detail::read_field(j, "photon_floor", c.photon_floor);
    detail::read_field(j, "out", c.out);
    if (j.contains("format")) {
        const std::string f = j.at("format").get<std::string>();
        if (f == "csv")
            c.format = OutputFormat::csv;
        else if (f == "jsonl")
            c.format = OutputFormat::jsonl;
        else
            throw ConfigError("format must be 'csv' or 'jsonl'");
    }
    detail::read_field(j, "workers", c.workers);

    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

inline RunConfig parse_config(const std::filesystem::path& file,
                              std::optional<RunMode> mode_override = std::nullopt) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw ConfigError("config file " + file.string() +
                          " is empty; expected a JSON object (keys: mode, g, eta, omega_L, "
                          "delta_p, delta_L, gamma_ge, gamma_me, gamma_gm, n_max, ...)");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + file.string() + ": " + e.what());
    }
    return parse_config_json(j, mode_override);
}

inline nlohmann::ordered_json emit_config(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["mode"] = to_string(c.mode);
    j["g"] = c.params.g;
    j["eta"] = c.params.eta;
    j["omega_L"] = c.params.omega_L;
    j["delta_p"] = c.params.delta_p;
    j["delta_L"] = c.params.delta_L;
    j["gamma_ge"] = c.params.gamma_ge;
    j["gamma_me"] = c.params.gamma_me;
    j["gamma_gm"] = c.params.gamma_gm;
    j["n_max"] = c.params.n_max;
    j["delta_p_grid"] = {{"start", c.delta_p_grid.start},
                         {"stop", c.delta_p_grid.stop},
                         {"step", c.delta_p_grid.step}};
    j["omega_L_grid"] = {{"start", c.omega_L_grid.start},
                         {"stop", c.omega_L_grid.stop},
                         {"step", c.omega_L_grid.step}};
    j["tau_grid"] = {{"tau_min", c.tau_grid.tau_min},
                     {"tau_max", c.tau_grid.tau_max},
                     {"points", c.tau_grid.points},
                     {"spacing", c.tau_grid.log_spacing ? "log" : "linear"}};
    j["sectors"] = c.sectors;
    j["photon_floor"] = c.photon_floor;
    j["out"] = c.out;
    j["format"] = c.format == OutputFormat::csv ? "csv" : "jsonl";
    j["workers"] = c.workers;
    return j;
}

}  // namespace lambdacav
