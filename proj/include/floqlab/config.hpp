#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "floqlab/bhz.hpp"
#include "floqlab/drive.hpp"
#include "floqlab/observables.hpp"
#include "floqlab/propagator.hpp"

namespace floqlab {

enum class UnitsMode { dimensionless, physical };

// Resolved parameters for one run. Parsing is strict: unknown keys anywhere in
// the document are rejected with their JSON path.
struct RunConfig {
    std::string command;
    std::uint64_t seed = 20210901;
    int threads = 1;
    UnitsMode units = UnitsMode::dimensionless;
    std::string out_dir = "out";

    DriveParams drive;
    int samples = 800;
    FieldSampling sampling = FieldSampling::midpoint;
    FitWindow fit_window = FitWindow::post_ramp;
    PhysicalUnits physical;

    bool tomography_enabled = false;
    int shots_per_basis = 8192;

    bool envelope_enabled = false;

    std::string noise_model = "none";  // none | heuristic | gaussian
    double beta = 0.029;
    double sigma_noise = 0.24;
    int realizations = 500;

    BhzParams bhz;
    int grid_n = 64;
    int curvature_grid = 64;

    std::vector<double> sweep_m;
    bool sweep_mc = true;

    int truncation = 6;
    bool include_tilt = true;
    int band_check_points = 50;

    nlohmann::json array_spec;  // schema handled by the array runner

    void validate() const;            // throws ConfigError
    nlohmann::json to_json() const;   // resolved form, for manifests
};

// Canonical defaults per subcommand (the shipped configs mirror these).
RunConfig default_config(const std::string& command);

// Merge a JSON document over the command defaults; unknown keys are errors.
RunConfig parse_config(const nlohmann::json& doc, const std::string& command);

// Reads and parses a config file; parse errors keep nlohmann's line/column
// diagnostics.
RunConfig load_config_file(const std::filesystem::path& path, const std::string& command);

}  // namespace floqlab
