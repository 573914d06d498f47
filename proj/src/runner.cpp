#include "floqlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>

#include "floqlab/array.hpp"
#include "floqlab/bhz.hpp"
#include "floqlab/csv.hpp"
#include "floqlab/error.hpp"
#include "floqlab/floquet_lattice.hpp"
#include "floqlab/noise.hpp"
#include "floqlab/observables.hpp"
#include "floqlab/propagator.hpp"
#include "floqlab/tomography.hpp"
#include "floqlab/version.hpp"

namespace floqlab {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

RunManifest make_manifest(const RunConfig& c) {
    RunManifest m;
    m.command = c.command;
    m.code_version = kVersion;
    m.created_utc = utc_timestamp();
    m.resolved_config = c.to_json();
    if (c.units == UnitsMode::physical) {
        m.notes.push_back(
            "physical units: t_seconds = t / omega_max; the paper's Omega_max ~= 36.9 MHz is "
            "read as 36.9e6 rad/s, which makes omega1 = 0.125 eta match omega1^-1 ~= 240 ns");
    }
    return m;
}

fs::path prepare_out_dir(const RunConfig& c) {
    fs::path dir(c.out_dir);
    fs::create_directories(dir);
    return dir;
}

// Column layout helper: physical mode prepends a seconds column.
struct TimeAxis {
    bool physical;
    double omega_max;

    std::vector<std::string> columns(std::vector<std::string> rest) const {
        std::vector<std::string> cols;
        if (physical) cols.push_back("t_seconds");
        cols.push_back("t");
        cols.insert(cols.end(), rest.begin(), rest.end());
        return cols;
    }
    std::vector<double> row(double t, std::vector<double> rest) const {
        std::vector<double> out;
        if (physical) out.push_back(t / omega_max);
        out.push_back(t);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    }
};

TimeAxis time_axis(const RunConfig& c) {
    return {c.units == UnitsMode::physical, c.physical.omega_max};
}

json fit_to_json(const LinearFit& f) {
    return {{"slope", f.slope},     {"intercept", f.intercept}, {"ci95", f.slope_ci95},
            {"points", f.n},        {"window_t0", f.window_t0}, {"window_t1", f.window_t1}};
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

void emit_work_csv(const fs::path& path, const WorkRecord& rec, const TimeAxis& axis) {
    CsvWriter csv(path, axis.columns({"W1", "W2"}));
    for (std::size_t k = 0; k < rec.times.size(); ++k)
        csv.row(axis.row(rec.times[k], {rec.W1[k], rec.W2[k]}));
}

const char* kSimulatePlot = R"PY(#!/usr/bin/env python3
"""Plots for a simulate run: Bloch components, work record, tomography."""
import csv
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def read(name):
    with open(os.path.join(HERE, name)) as f:
        rows = list(csv.DictReader(f))
    return {k: [float(r[k]) for r in rows] for k in rows[0]} if rows else {}


traj = read("trajectory.csv")
work = read("work.csv")
tomo = read("tomography.csv") if os.path.exists(os.path.join(HERE, "tomography.csv")) else {}

n_rows = 3 if tomo else 2
fig, axes = plt.subplots(n_rows, 1, figsize=(7, 3 * n_rows), sharex=True)

for comp in ("sx", "sy", "sz"):
    axes[0].plot(traj["t"], traj[comp], label=comp, lw=0.8)
axes[0].set_ylabel("Pauli expectation")
axes[0].legend(loc="upper right")

axes[1].plot(work["t"], work["W1"], label="W1")
axes[1].plot(work["t"], work["W2"], label="W2")
axes[1].set_ylabel("work [eta]")
axes[1].legend(loc="upper left")

if tomo:
    axes[2].plot(tomo["t"], tomo["purity"], label="purity", lw=0.8)
    axes[2].plot(tomo["t"], tomo["fidelity"], label="fidelity", lw=0.8)
    axes[2].set_ylabel("purity / fidelity")
    axes[2].legend(loc="lower left")

axes[-1].set_xlabel("t [1/eta]")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "simulate.png"), dpi=160)
print("wrote simulate.png")
)PY";

const char* kSweepPlot = R"PY(#!/usr/bin/env python3
"""Extracted Chern number vs M, with the heuristic-noise band when present."""
import csv
import math
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))

with open(os.path.join(HERE, "summary.csv")) as f:
    rows = [{k: float(v) for k, v in r.items()} for r in csv.DictReader(f)]

rows = [r for r in rows if not math.isnan(r["C_est"])]
m = [r["M"] for r in rows]

fig, ax = plt.subplots(figsize=(7, 4.5))
band = [r for r in rows if not math.isnan(r["mc_std"])]
if band:
    ax.fill_between([r["M"] for r in band],
                    [r["mc_mean"] - r["mc_std"] for r in band],
                    [r["mc_mean"] + r["mc_std"] for r in band],
                    alpha=0.25, label="heuristic noise band")
ax.errorbar(m, [r["C_est"] for r in rows], yerr=[r["ci95"] for r in rows],
            fmt="o", capsize=3, label="extracted C")
ax.plot(m, [r["C_bhz"] for r in rows], "k--", label="BHZ Chern number")
ax.set_xlabel("M")
ax.set_ylabel("C")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "chern_sweep.png"), dpi=160)
print("wrote chern_sweep.png")
)PY";

RunManifest cmd_simulate(const RunConfig& c) {
    const fs::path dir = prepare_out_dir(c);
    RunManifest manifest = make_manifest(c);
    const TimeAxis axis = time_axis(c);

    const Trajectory traj = evolve(c.drive, c.samples, c.sampling);
    manifest.notes.push_back("dt_effective = " + format_double(traj.dt_effective));
    {
        CsvWriter csv(dir / "trajectory.csv", axis.columns({"sx", "sy", "sz"}));
        for (std::size_t k = 0; k < traj.size(); ++k)
            csv.row(axis.row(traj.times[k],
                             {traj.states[k].x, traj.states[k].y, traj.states[k].z}));
        manifest.add_output(dir, "trajectory.csv");
    }

    const WorkRecord work = work_series(traj, c.fit_window);
    emit_work_csv(dir / "work.csv", work, axis);
    manifest.add_output(dir, "work.csv");

    const ChernEstimate chern = chern_from_work(work, c.drive);
    json fits;
    fits["window"] = c.fit_window == FitWindow::post_ramp ? "post_ramp" : "full";
    fits["fit1"] = fit_to_json(work.fit1);
    fits["fit2"] = fit_to_json(work.fit2);
    fits["chern"] = {{"value", chern.value}, {"ci95", chern.ci95}};
    fits["energy_balance_residual"] = energy_balance(traj);

    if (c.tomography_enabled) {
        const Trajectory lab = evolve(c.drive, c.samples, c.sampling, Frame::lab);
        Trajectory measured = traj;  // same grid; states replaced below
        std::vector<double> purities(traj.size()), fidelities(traj.size());
        CsvWriter csv(dir / "tomography.csv",
                      axis.columns({"sx_raw", "sy_raw", "sz_raw", "sx", "sy", "sz", "purity",
                                    "fidelity"}));
        for (std::size_t k = 0; k < traj.size(); ++k) {
            std::mt19937_64 rng = realization_rng(c.seed, k);
            const ShotRecord shots = sample_shots(lab.states[k], c.shots_per_basis, rng);
            const double phi = virtual_z_phase(c.drive, traj.times[k]);
            const std::array<double, 3> raw = rotate_frame(shots.means(), phi);
            const BlochState projected = project_bloch(raw);
            purities[k] = purity(raw);
            fidelities[k] = fidelity(projected, traj.states[k]);
            measured.states[k] = projected;
            csv.row(axis.row(traj.times[k], {raw[0], raw[1], raw[2], projected.x, projected.y,
                                             projected.z, purities[k], fidelities[k]}));
        }
        manifest.add_output(dir, "tomography.csv");

        const WorkRecord work_measured = work_series(measured, c.fit_window);
        emit_work_csv(dir / "work_measured.csv", work_measured, axis);
        manifest.add_output(dir, "work_measured.csv");
        const ChernEstimate chern_measured = chern_from_work(work_measured, c.drive);
        fits["measured"] = {{"fit1", fit_to_json(work_measured.fit1)},
                            {"fit2", fit_to_json(work_measured.fit2)},
                            {"chern", {{"value", chern_measured.value}, {"ci95", chern_measured.ci95}}}};

        const ExpDecayFit purity_fit = fit_exp_decay(traj.times, purities, DecayForm::purity);
        const ExpDecayFit fidelity_fit =
            fit_exp_decay(traj.times, fidelities, DecayForm::fidelity);
        fits["purity_fit"] = {{"amplitude", purity_fit.amplitude},
                              {"timescale", purity_fit.timescale_unbounded
                                                ? json("unbounded")
                                                : json(purity_fit.timescale)}};
        fits["fidelity_fit"] = {{"amplitude", fidelity_fit.amplitude},
                                {"timescale", fidelity_fit.timescale_unbounded
                                                  ? json("unbounded")
                                                  : json(fidelity_fit.timescale)}};
    }

    if (c.envelope_enabled) {
        const Envelope env = synthesize_envelope(c.drive, c.physical);
        {
            CsvWriter csv(dir / "envelope.csv", {"t_seconds", "re_d", "im_d"});
            for (std::size_t k = 0; k < env.d.size(); ++k)
                csv.row({env.t_seconds[k], env.d[k].real(), env.d[k].imag()});
        }
        manifest.add_output(dir, "envelope.csv");
        {
            CsvWriter csv(dir / "clipping.csv", {"index", "t_seconds", "abs_d"});
            for (const std::size_t k : env.clipped)
                csv.row({static_cast<double>(k), env.t_seconds[k], std::abs(env.d[k])});
        }
        manifest.add_output(dir, "clipping.csv");
        manifest.notes.push_back("envelope samples with |d| > 1: " +
                                 std::to_string(env.clipped.size()));
    }

    write_json(dir / "fit_summary.json", fits);
    manifest.add_output(dir, "fit_summary.json");
    write_text(dir / "plot.py", kSimulatePlot);
    manifest.add_output(dir, "plot.py");
    manifest.write(dir);
    return manifest;
}

RunManifest cmd_chern_sweep(const RunConfig& c) {
    const fs::path dir = prepare_out_dir(c);
    RunManifest manifest = make_manifest(c);
    const TimeAxis axis = time_axis(c);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    CsvWriter summary(dir / "summary.csv", {"M", "C_est", "ci95", "C_bhz", "mc_mean", "mc_std"});
    std::vector<std::string> work_files;
    for (std::size_t m = 0; m < c.sweep_m.size(); ++m) {
        DriveParams p = c.drive;
        p.M = c.sweep_m[m];
        double c_est = nan, ci = nan, c_bhz = nan, mc_mean = nan, mc_std = nan;
        try {
            const Trajectory traj = evolve(p, c.samples, c.sampling);
            const WorkRecord rec = work_series(traj, c.fit_window);
            const ChernEstimate est = chern_from_work(rec, p);
            c_est = est.value;
            ci = est.ci95;

            const std::string work_name = "work_M" + format_double(p.M) + ".csv";
            emit_work_csv(dir / work_name, rec, axis);
            work_files.push_back(work_name);

            if (c.sweep_mc && c.noise_model == "heuristic") {
                HeuristicNoiseParams noise{c.beta, c.seed + 0x9E37 * (m + 1)};
                const McChernResult mc = mc_chern(p, noise, c.realizations, c.samples,
                                                  c.threads, c.fit_window);
                mc_mean = mc.mean;
                mc_std = mc.stddev;
            }
        } catch (const Error& e) {
            manifest.notes.push_back("M = " + format_double(p.M) + " failed: " + e.what());
        }
        try {
            c_bhz = chern_number(BhzParams{p.M, 1.0}, 32);
        } catch (const Error& e) {
            manifest.notes.push_back("BHZ reference at M = " + format_double(p.M) +
                                     " failed: " + e.what());
        }
        summary.row({p.M, c_est, ci, c_bhz, mc_mean, mc_std});
    }
    manifest.add_output(dir, "summary.csv");
    for (const auto& name : work_files) manifest.add_output(dir, name);
    write_text(dir / "plot.py", kSweepPlot);
    manifest.add_output(dir, "plot.py");
    manifest.write(dir);
    return manifest;
}

RunManifest cmd_bhz(const RunConfig& c) {
    const fs::path dir = prepare_out_dir(c);
    RunManifest manifest = make_manifest(c);

    double riemann = 0.0;
    {
        CsvWriter csv(dir / "curvature.csv", {"kx", "ky", "F_xy"});
        const int n = c.curvature_grid;
        const double step = 2.0 * M_PI / n;
        for (int ix = 0; ix < n; ++ix) {
            for (int iy = 0; iy < n; ++iy) {
                const KPoint k{ix * step, iy * step};
                const double f = berry_curvature(c.bhz, k);
                riemann += f * step * step;
                csv.row({k.kx, k.ky, f});
            }
        }
        riemann /= 2.0 * M_PI;
    }
    manifest.add_output(dir, "curvature.csv");

    json summary;
    summary["M"] = c.bhz.M;
    summary["B"] = c.bhz.B;
    json cherns = json::object();
    for (const int n : {8, 16, 32, 64, c.grid_n})
        cherns[std::to_string(n)] = chern_number(c.bhz, n);
    summary["chern_number"] = cherns;
    summary["riemann_sum"] = riemann;
    const WindingDiagnostic wind = winding_diagnostic(c.bhz, c.grid_n);
    const char* origin = wind.origin == OriginEnclosure::outside
                             ? "outside"
                             : (wind.origin == OriginEnclosure::lobe_lower ? "lobe_lower"
                                                                           : "lobe_upper");
    summary["winding"] = {{"zmin", wind.zmin}, {"zmax", wind.zmax}, {"origin", origin}};
    write_json(dir / "summary.json", summary);
    manifest.add_output(dir, "summary.json");
    manifest.write(dir);
    return manifest;
}

RunManifest cmd_floquet(const RunConfig& c) {
    const fs::path dir = prepare_out_dir(c);
    RunManifest manifest = make_manifest(c);

    const Truncation tr{c.truncation};
    const QuasienergyOperator op = build_operator(c.drive, tr, c.include_tilt);
    const Eigen::VectorXd spec = op.spectrum();
    {
        CsvWriter csv(dir / "spectrum.csv", {"index", "quasienergy"});
        for (Eigen::Index i = 0; i < spec.size(); ++i)
            csv.row({static_cast<double>(i), spec(i)});
    }
    manifest.add_output(dir, "spectrum.csv");

    // zero-tilt bands must coincide with the static band theory at shifted k
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    double band_dev = 0.0;
    for (int i = 0; i < c.band_check_points; ++i) {
        DriveParams p = c.drive;
        p.phi1 = angle(rng);
        p.phi2 = angle(rng);
        const KPoint k{angle(rng), angle(rng)};
        const auto [lo, hi] = zero_field_bands(p, k);
        const auto [blo, bhi] =
            bands(BhzParams{p.M, 1.0}, KPoint{k.kx + p.phi1, k.ky + p.phi2});
        band_dev = std::max(band_dev, std::abs(lo - p.eta * blo));
        band_dev = std::max(band_dev, std::abs(hi - p.eta * bhi));
    }

    // Fourier reconstruction residual of the hopping table
    const HoppingTable table = fourier_hoppings(c.drive);
    double fourier_dev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double th1 = angle(rng), th2 = angle(rng);
        Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
        for (const auto& [pvec, block] : table)
            sum += block * std::polar(1.0, -(pvec.first * th1 + pvec.second * th2));
        DriveParams p = c.drive;
        p.phi1 = th1;
        p.phi2 = th2;
        const FieldVector h = field_at(p, 0.0);
        Eigen::Matrix2cd direct;
        direct << h.hz, complexd(h.hx, -h.hy), complexd(h.hx, h.hy), -h.hz;
        fourier_dev = std::max(fourier_dev, (sum - direct).cwiseAbs().maxCoeff());
    }

    json summary;
    summary["dimension"] = static_cast<long>(tr.dimension());
    summary["include_tilt"] = c.include_tilt;
    summary["hermiticity_defect"] = op.hermiticity_defect();
    summary["zero_tilt_band_deviation"] = band_dev;
    summary["fourier_reconstruction_residual"] = fourier_dev;
    write_json(dir / "summary.json", summary);
    manifest.add_output(dir, "summary.json");
    manifest.write(dir);

    if (band_dev > 1e-10)
        throw NumericalError("floquet: zero-tilt bands deviate from the static band theory");
    if (fourier_dev > 1e-12)
        throw NumericalError("floquet: Fourier reconstruction residual too large");
    return manifest;
}

Waveform parse_waveform(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError(where + ": waveform needs a \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "const") {
        const double v = j.at("value").get<double>();
        return [v](double) { return v; };
    }
    if (type == "harmonic") {
        const double amp = j.at("amp").get<double>();
        const double freq = j.at("freq").get<double>();
        const double phase = j.value("phase", 0.0);
        const bool is_sin = j.value("kind", std::string("sin")) == "sin";
        if (is_sin) return [=](double t) { return amp * std::sin(freq * t + phase); };
        return [=](double t) { return amp * std::cos(freq * t + phase); };
    }
    if (type == "table") {
        const std::vector<double> ts = j.at("times").get<std::vector<double>>();
        const std::vector<double> vs = j.at("values").get<std::vector<double>>();
        if (ts.size() != vs.size() || ts.size() < 2)
            throw ConfigError(where + ": table needs matching times/values, >= 2 points");
        return [ts, vs](double t) {
            if (t <= ts.front()) return vs.front();
            if (t >= ts.back()) return vs.back();
            const auto it = std::upper_bound(ts.begin(), ts.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - ts.begin());
            const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
            return vs[i - 1] + w * (vs[i] - vs[i - 1]);
        };
    }
    throw ConfigError(where + ": unknown waveform type \"" + type + "\"");
}

RunManifest cmd_array(const RunConfig& c) {
    const fs::path dir = prepare_out_dir(c);
    RunManifest manifest = make_manifest(c);
    const json& spec_json = c.array_spec;
    if (spec_json.is_null()) throw ConfigError("array: missing array block in the config");

    LatticeSpec spec;
    spec.n_qubits = spec_json.at("n_qubits").get<int>();
    if (spec.n_qubits > kMaxArrayQubits)
        throw CapabilityError("array: dense evolution is capped at 12 qubits");
    const std::string model = spec_json.value("model", std::string("xy"));

    std::vector<Waveform> g_xy, g_x, g_y;
    for (const auto& edge : spec_json.value("edges", json::array())) {
        spec.edges.emplace_back(edge.at("i").get<int>(), edge.at("j").get<int>());
        if (model == "xy") {
            g_xy.push_back(edge.contains("g") ? parse_waveform(edge.at("g"), "array.edges.g")
                                              : Waveform{});
        } else {
            g_x.push_back(edge.contains("gx") ? parse_waveform(edge.at("gx"), "array.edges.gx")
                                              : Waveform{});
            g_y.push_back(edge.contains("gy") ? parse_waveform(edge.at("gy"), "array.edges.gy")
                                              : Waveform{});
        }
    }
    if (spec_json.contains("bipartition"))
        spec.bipartition = spec_json.at("bipartition").get<std::vector<int>>();

    std::vector<SiteField> fields(spec.n_qubits);
    const json field_list = spec_json.value("fields", json::array());
    for (std::size_t i = 0; i < field_list.size() && i < fields.size(); ++i) {
        const json& f = field_list[i];
        if (f.contains("hx")) fields[i].hx = parse_waveform(f.at("hx"), "array.fields.hx");
        if (f.contains("hy")) fields[i].hy = parse_waveform(f.at("hy"), "array.fields.hy");
        if (f.contains("hz")) fields[i].hz = parse_waveform(f.at("hz"), "array.fields.hz");
    }

    TimeDependentHamiltonian H;
    if (model == "xy") {
        const std::vector<double> deltas =
            spec_json.value("deltas", std::vector<double>{});
        H = build_tunable_xy(spec, fields, deltas, g_xy);
    } else if (model == "cross_resonance") {
        H = build_cross_resonance(spec, fields, g_x, g_y);
    } else {
        throw ConfigError("array.model must be xy or cross_resonance");
    }
    if (spec_json.value("rotate", false)) H = bipartite_rotate(spec, H);

    const double t_total = spec_json.value("t_total", 50.0);
    const double dt = spec_json.value("dt", 0.05);
    const int samples = spec_json.value("samples", 201);

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(H.dimension());
    const json psi_spec = spec_json.value("psi0", json("all_zero"));
    if (psi_spec.is_string()) {
        const std::string name = psi_spec.get<std::string>();
        if (name == "all_zero")
            psi0(0) = 1.0;
        else if (name == "single_flip")
            psi0(1) = 1.0;
        else
            throw ConfigError("array.psi0 must be all_zero, single_flip, or amplitudes");
    } else {
        const auto amps = psi_spec.get<std::vector<std::vector<double>>>();
        if (static_cast<Eigen::Index>(amps.size()) != H.dimension())
            throw ConfigError("array.psi0 amplitude count must be 2^n_qubits");
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (amps[i].size() != 2) throw ConfigError("array.psi0 entries are [re, im]");
            psi0(i) = complexd(amps[i][0], amps[i][1]);
        }
        const double n = psi0.norm();
        if (n < 1e-12) throw ConfigError("array.psi0 must not be zero");
        psi0 /= n;
    }

    const ArrayTrajectory traj = evolve_array(H, psi0, t_total, dt, samples);
    {
        std::vector<std::string> cols{"t"};
        for (int q = 0; q < spec.n_qubits; ++q) cols.push_back("sz_" + std::to_string(q));
        cols.push_back("norm");
        CsvWriter csv(dir / "array_traj.csv", cols);
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            std::vector<double> row{traj.times[k]};
            const Eigen::VectorXcd& psi = traj.states[k];
            for (int q = 0; q < spec.n_qubits; ++q) {
                double expect = 0.0;
                for (Eigen::Index r = 0; r < psi.size(); ++r)
                    expect += std::norm(psi(r)) * (((r >> q) & 1) ? -1.0 : 1.0);
                row.push_back(expect);
            }
            row.push_back(psi.norm());
            csv.row(row);
        }
    }
    manifest.add_output(dir, "array_traj.csv");

    json summary;
    summary["model"] = model;
    summary["dimension"] = static_cast<long>(H.dimension());
    summary["terms"] = H.terms.size();
    summary["hermiticity_defect"] = std::max(
        {H.hermiticity_defect(0.0), H.hermiticity_defect(0.5 * t_total), H.hermiticity_defect(t_total)});
    if (spec_json.contains("tones")) {
        const auto tones = spec_json.at("tones").get<std::vector<double>>();
        const double spacing = spec_json.value("min_tone_spacing", 0.0);
        json collisions = json::array();
        for (const auto& [a, b] : frequency_crowding_report(tones, spacing))
            collisions.push_back({a, b});
        summary["tone_collisions"] = collisions;
    }
    write_json(dir / "summary.json", summary);
    manifest.add_output(dir, "summary.json");
    manifest.write(dir);
    return manifest;
}

RunManifest cmd_noise_mc(const RunConfig& c) {
    const fs::path dir = prepare_out_dir(c);
    RunManifest manifest = make_manifest(c);

    if (c.noise_model == "gaussian") {
        // fidelity-law study of the underlying error model
        GaussianNoiseParams gp{c.sigma_noise, c.seed};
        std::mt19937_64 rng(c.seed);
        const BlochState ref{0.0, 0.0, 1.0};
        const int draws = std::max(c.realizations, 1000);
        double mean_f = 0.0;
        {
            CsvWriter csv(dir / "fidelity.csv", {"draw", "fidelity"});
            for (int i = 0; i < draws; ++i) {
                const double f = fidelity(gaussian_measure(ref, gp, rng), ref);
                mean_f += f;
                csv.row({static_cast<double>(i), f});
            }
        }
        mean_f /= draws;
        manifest.add_output(dir, "fidelity.csv");
        write_json(dir / "summary.json",
                   json{{"model", "gaussian"},
                        {"sigma_noise", c.sigma_noise},
                        {"draws", draws},
                        {"mean_fidelity", mean_f},
                        {"exponential_rate_prediction", c.sigma_noise * c.sigma_noise / 2.0},
                        {"seed", c.seed}});
        manifest.add_output(dir, "summary.json");
        manifest.write(dir);
        return manifest;
    }

    HeuristicNoiseParams noise{c.beta, c.seed};
    const McChernResult mc =
        mc_chern(c.drive, noise, c.realizations, c.samples, c.threads, c.fit_window);
    {
        CsvWriter csv(dir / "mc.csv", {"realization", "C_est"});
        for (std::size_t i = 0; i < mc.samples.size(); ++i)
            csv.row({static_cast<double>(mc.sample_indices[i]), mc.samples[i]});
    }
    manifest.add_output(dir, "mc.csv");
    write_json(dir / "summary.json", json{{"model", "heuristic"},
                                          {"beta", c.beta},
                                          {"mean", mc.mean},
                                          {"std", mc.stddev},
                                          {"n", mc.samples.size()},
                                          {"failures", mc.failures.size()},
                                          {"clean_value", mc.clean_value},
                                          {"seed", c.seed}});
    manifest.add_output(dir, "summary.json");
    manifest.write(dir);
    return manifest;
}

}  // namespace

RunManifest run_command(const RunConfig& config) {
    config.validate();
    if (config.command == "simulate") return cmd_simulate(config);
    if (config.command == "chern-sweep") return cmd_chern_sweep(config);
    if (config.command == "bhz") return cmd_bhz(config);
    if (config.command == "floquet") return cmd_floquet(config);
    if (config.command == "array") return cmd_array(config);
    if (config.command == "noise-mc") return cmd_noise_mc(config);
    throw ConfigError("unknown command " + config.command);
}

int run_command_exit_code(const RunConfig& config, bool print_errors) {
    try {
        run_command(config);
        return 0;
    } catch (const ConfigError& e) {
        if (print_errors) std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        if (print_errors) std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const CapabilityError& e) {
        if (print_errors) std::cerr << "capability error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        if (print_errors) std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace floqlab
