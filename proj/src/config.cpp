#include "floqlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "floqlab/error.hpp"

namespace floqlab {

namespace {

constexpr double kGolden = 1.6180339887498949;

using nlohmann::json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

template <typename T>
void assign(const json& j, const char* key, T& target) {
    if (!j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("key \"") + key + "\": " + e.what());
    }
}

void parse_drive(const json& j, DriveParams& d) {
    require_keys(j, "drive",
                 {"eta", "omega1", "omega2", "omega2_over_omega1", "phi1", "phi2", "M",
                  "ramp_duration", "t_total", "dt"});
    if (j.contains("omega2") && j.contains("omega2_over_omega1"))
        throw ConfigError("drive: give omega2 or omega2_over_omega1, not both");
    assign(j, "eta", d.eta);
    assign(j, "omega1", d.omega1);
    assign(j, "phi1", d.phi1);
    assign(j, "phi2", d.phi2);
    assign(j, "M", d.M);
    assign(j, "ramp_duration", d.ramp_duration);
    assign(j, "t_total", d.t_total);
    assign(j, "dt", d.dt);
    if (j.contains("omega2")) {
        assign(j, "omega2", d.omega2);
    } else {
        double ratio = kGolden;
        assign(j, "omega2_over_omega1", ratio);
        d.omega2 = ratio * d.omega1;
    }
}

}  // namespace

void RunConfig::validate() const {
    try {
        drive.validate();
        physical.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (samples < 2) throw ConfigError("samples must be >= 2");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (shots_per_basis < 1) throw ConfigError("tomography.shots_per_basis must be >= 1");
    if (noise_model != "none" && noise_model != "heuristic" && noise_model != "gaussian")
        throw ConfigError("noise.model must be none, heuristic, or gaussian");
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("noise.beta must be in (0, 1)");
    if (!(sigma_noise >= 0.0 && sigma_noise < 1.0))
        throw ConfigError("noise.sigma_noise must be in [0, 1)");
    if (realizations < 2) throw ConfigError("noise.realizations must be >= 2");
    if (grid_n < 4) throw ConfigError("bhz.grid_n must be >= 4");
    if (curvature_grid < 4) throw ConfigError("bhz.curvature_grid must be >= 4");
    if (command == "chern-sweep" && sweep_m.empty())
        throw ConfigError("sweep.m_values must not be empty");
    if (truncation < 1 || truncation > 12)
        throw ConfigError("floquet.truncation must be in [1, 12]");
    if (band_check_points < 1) throw ConfigError("floquet.band_check_points must be >= 1");
}

nlohmann::json RunConfig::to_json() const {
    json j;
    j["seed"] = seed;
    j["threads"] = threads;
    j["units"] = units == UnitsMode::physical ? "physical" : "dimensionless";
    j["out"] = out_dir;
    j["drive"] = {{"eta", drive.eta},       {"omega1", drive.omega1},
                  {"omega2", drive.omega2}, {"phi1", drive.phi1},
                  {"phi2", drive.phi2},     {"M", drive.M},
                  {"ramp_duration", drive.ramp_duration},
                  {"t_total", drive.t_total},
                  {"dt", drive.dt}};
    j["samples"] = samples;
    j["sampling"] = sampling == FieldSampling::midpoint ? "midpoint" : "left";
    j["fit_window"] = fit_window == FitWindow::post_ramp ? "post_ramp" : "full";
    j["physical"] = {{"omega_max", physical.omega_max}, {"dt_hardware", physical.dt_hardware}};
    j["tomography"] = {{"enabled", tomography_enabled}, {"shots_per_basis", shots_per_basis}};
    j["envelope"] = {{"enabled", envelope_enabled}};
    j["noise"] = {{"model", noise_model},
                  {"beta", beta},
                  {"sigma_noise", sigma_noise},
                  {"realizations", realizations}};
    j["bhz"] = {{"M", bhz.M}, {"B", bhz.B}, {"grid_n", grid_n}, {"curvature_grid", curvature_grid}};
    j["sweep"] = {{"m_values", sweep_m}, {"mc", sweep_mc}};
    j["floquet"] = {{"truncation", truncation},
                    {"include_tilt", include_tilt},
                    {"band_check_points", band_check_points}};
    if (!array_spec.is_null()) j["array"] = array_spec;
    return j;
}

RunConfig default_config(const std::string& command) {
    RunConfig c;
    c.command = command;
    c.drive.ramp_duration = 14.75;  // the experiment's 444 ns ramp in 1/eta
    if (command == "simulate") {
        c.tomography_enabled = true;
    } else if (command == "chern-sweep") {
        c.sweep_m = {0.6, 0.8, 1.0, 1.2, 1.4, 1.7, 2.3, 2.6, 2.8, 3.0, 3.2, 3.4};
        c.noise_model = "heuristic";
    } else if (command == "noise-mc") {
        c.noise_model = "heuristic";
    } else if (command == "floquet") {
        c.drive.ramp_duration = 0.0;
    } else if (command == "array") {
        c.array_spec = nlohmann::json::parse(R"({
            "model": "xy",
            "n_qubits": 3,
            "edges": [
                {"i": 0, "j": 1, "g": {"type": "harmonic", "kind": "cos", "amp": 0.2, "freq": 0.05, "phase": 0.0}},
                {"i": 1, "j": 2, "g": {"type": "const", "value": 0.2}}
            ],
            "fields": [
                {"hz": {"type": "const", "value": 0.3}},
                {"hz": {"type": "const", "value": 0.25}},
                {"hz": {"type": "const", "value": 0.35}}
            ],
            "deltas": [0.0, 0.01, -0.01],
            "psi0": "single_flip",
            "t_total": 60.0,
            "dt": 0.05,
            "samples": 301
        })");
    }
    return c;
}

RunConfig parse_config(const nlohmann::json& doc, const std::string& command) {
    RunConfig c = default_config(command);
    require_keys(doc, "config",
                 {"seed", "threads", "units", "out", "drive", "samples", "sampling",
                  "fit_window", "physical", "tomography", "envelope", "noise", "bhz", "sweep",
                  "floquet", "array"});

    assign(doc, "seed", c.seed);
    assign(doc, "threads", c.threads);
    assign(doc, "out", c.out_dir);
    assign(doc, "samples", c.samples);
    if (doc.contains("units")) {
        const std::string u = doc.at("units").get<std::string>();
        if (u == "dimensionless")
            c.units = UnitsMode::dimensionless;
        else if (u == "physical")
            c.units = UnitsMode::physical;
        else
            throw ConfigError("units must be dimensionless or physical");
    }
    if (doc.contains("sampling")) {
        const std::string s = doc.at("sampling").get<std::string>();
        if (s == "midpoint")
            c.sampling = FieldSampling::midpoint;
        else if (s == "left")
            c.sampling = FieldSampling::left;
        else
            throw ConfigError("sampling must be midpoint or left");
    }
    if (doc.contains("fit_window")) {
        const std::string w = doc.at("fit_window").get<std::string>();
        if (w == "post_ramp")
            c.fit_window = FitWindow::post_ramp;
        else if (w == "full")
            c.fit_window = FitWindow::full;
        else
            throw ConfigError("fit_window must be post_ramp or full");
    }
    if (doc.contains("drive")) parse_drive(doc.at("drive"), c.drive);
    if (doc.contains("physical")) {
        const json& j = doc.at("physical");
        require_keys(j, "physical", {"omega_max", "dt_hardware"});
        assign(j, "omega_max", c.physical.omega_max);
        assign(j, "dt_hardware", c.physical.dt_hardware);
    }
    if (doc.contains("tomography")) {
        const json& j = doc.at("tomography");
        require_keys(j, "tomography", {"enabled", "shots_per_basis"});
        assign(j, "enabled", c.tomography_enabled);
        assign(j, "shots_per_basis", c.shots_per_basis);
    }
    if (doc.contains("envelope")) {
        const json& j = doc.at("envelope");
        require_keys(j, "envelope", {"enabled"});
        assign(j, "enabled", c.envelope_enabled);
    }
    if (doc.contains("noise")) {
        const json& j = doc.at("noise");
        require_keys(j, "noise", {"model", "beta", "sigma_noise", "realizations"});
        assign(j, "model", c.noise_model);
        assign(j, "beta", c.beta);
        assign(j, "sigma_noise", c.sigma_noise);
        assign(j, "realizations", c.realizations);
    }
    if (doc.contains("bhz")) {
        const json& j = doc.at("bhz");
        require_keys(j, "bhz", {"M", "B", "grid_n", "curvature_grid"});
        assign(j, "M", c.bhz.M);
        assign(j, "B", c.bhz.B);
        assign(j, "grid_n", c.grid_n);
        assign(j, "curvature_grid", c.curvature_grid);
    }
    if (doc.contains("sweep")) {
        const json& j = doc.at("sweep");
        require_keys(j, "sweep", {"m_values", "mc"});
        assign(j, "m_values", c.sweep_m);
        assign(j, "mc", c.sweep_mc);
    }
    if (doc.contains("floquet")) {
        const json& j = doc.at("floquet");
        require_keys(j, "floquet", {"truncation", "include_tilt", "band_check_points"});
        assign(j, "truncation", c.truncation);
        assign(j, "include_tilt", c.include_tilt);
        assign(j, "band_check_points", c.band_check_points);
    }
    if (doc.contains("array")) c.array_spec = doc.at("array");

    c.validate();
    return c;
}

RunConfig load_config_file(const std::filesystem::path& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);  // exceptions carry line/column positions
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(doc, command);
}

}  // namespace floqlab
