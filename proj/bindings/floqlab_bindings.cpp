#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "floqlab/bhz.hpp"
#include "floqlab/drive.hpp"
#include "floqlab/error.hpp"
#include "floqlab/floquet_lattice.hpp"
#include "floqlab/noise.hpp"
#include "floqlab/observables.hpp"
#include "floqlab/propagator.hpp"
#include "floqlab/tomography.hpp"
#include "floqlab/version.hpp"

namespace py = pybind11;
using namespace floqlab;

namespace {

FieldSampling sampling_of(const std::string& s) {
    if (s == "midpoint") return FieldSampling::midpoint;
    if (s == "left") return FieldSampling::left;
    throw InvalidArgument("sampling must be midpoint or left");
}

Frame frame_of(const std::string& s) {
    if (s == "rotating") return Frame::rotating;
    if (s == "lab") return Frame::lab;
    throw InvalidArgument("frame must be rotating or lab");
}

FitWindow window_of(const std::string& s) {
    if (s == "post_ramp") return FitWindow::post_ramp;
    if (s == "full") return FitWindow::full;
    throw InvalidArgument("fit_window must be post_ramp or full");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Driven-qubit topological frequency-conversion laboratory (C++ core)";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "FloqlabError", PyExc_RuntimeError);

    py::class_<DriveParams>(m, "DriveParams")
        .def(py::init<>())
        .def_readwrite("eta", &DriveParams::eta)
        .def_readwrite("omega1", &DriveParams::omega1)
        .def_readwrite("omega2", &DriveParams::omega2)
        .def_readwrite("phi1", &DriveParams::phi1)
        .def_readwrite("phi2", &DriveParams::phi2)
        .def_readwrite("M", &DriveParams::M)
        .def_readwrite("ramp_duration", &DriveParams::ramp_duration)
        .def_readwrite("t_total", &DriveParams::t_total)
        .def_readwrite("dt", &DriveParams::dt)
        .def("default_dt", &DriveParams::default_dt)
        .def("validate", &DriveParams::validate);

    py::class_<BlochState>(m, "BlochState")
        .def(py::init<>())
        .def_readwrite("x", &BlochState::x)
        .def_readwrite("y", &BlochState::y)
        .def_readwrite("z", &BlochState::z)
        .def("norm", &BlochState::norm)
        .def("__repr__", [](const BlochState& b) {
            return "BlochState(" + std::to_string(b.x) + ", " + std::to_string(b.y) + ", " +
                   std::to_string(b.z) + ")";
        });

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("dt_effective", &Trajectory::dt_effective)
        .def_readonly("norm_defect", &Trajectory::norm_defect)
        .def_property_readonly("params", [](const Trajectory& t) { return t.params; })
        .def("bloch",
             [](const Trajectory& t) {
                 std::vector<std::array<double, 3>> out;
                 out.reserve(t.states.size());
                 for (const BlochState& s : t.states) out.push_back({s.x, s.y, s.z});
                 return out;
             })
        .def("__len__", [](const Trajectory& t) { return t.size(); });

    py::class_<LinearFit>(m, "LinearFit")
        .def_readonly("slope", &LinearFit::slope)
        .def_readonly("intercept", &LinearFit::intercept)
        .def_readonly("slope_ci95", &LinearFit::slope_ci95)
        .def_readonly("n", &LinearFit::n);

    py::class_<WorkRecord>(m, "WorkRecord")
        .def_readonly("times", &WorkRecord::times)
        .def_readonly("W1", &WorkRecord::W1)
        .def_readonly("W2", &WorkRecord::W2)
        .def_readonly("fit1", &WorkRecord::fit1)
        .def_readonly("fit2", &WorkRecord::fit2);

    py::class_<ChernEstimate>(m, "ChernEstimate")
        .def_readonly("value", &ChernEstimate::value)
        .def_readonly("ci95", &ChernEstimate::ci95);

    py::class_<McChernResult>(m, "McChernResult")
        .def_readonly("mean", &McChernResult::mean)
        .def_readonly("stddev", &McChernResult::stddev)
        .def_readonly("clean_value", &McChernResult::clean_value)
        .def_readonly("samples", &McChernResult::samples);

    py::class_<ExpDecayFit>(m, "ExpDecayFit")
        .def_readonly("amplitude", &ExpDecayFit::amplitude)
        .def_readonly("timescale", &ExpDecayFit::timescale)
        .def_readonly("timescale_unbounded", &ExpDecayFit::timescale_unbounded);

    // drive
    m.def("field_at", [](const DriveParams& p, double t) {
        const FieldVector h = field_at(p, t);
        return std::array<double, 3>{h.hx, h.hy, h.hz};
    });
    m.def("virtual_z_phase", &virtual_z_phase);
    m.def("instantaneous_phases", &instantaneous_phases);

    // propagator + observables
    m.def(
        "evolve",
        [](const DriveParams& p, int n_samples, const std::string& sampling,
           const std::string& frame) {
            return evolve(p, n_samples, sampling_of(sampling), frame_of(frame));
        },
        py::arg("params"), py::arg("n_samples") = 800, py::arg("sampling") = "midpoint",
        py::arg("frame") = "rotating");
    m.def(
        "work_series",
        [](const Trajectory& t, const std::string& window) {
            return work_series(t, window_of(window));
        },
        py::arg("trajectory"), py::arg("window") = "post_ramp");
    m.def("chern_from_work", &chern_from_work);
    m.def("energy_balance", &energy_balance);

    // bhz
    m.def(
        "bhz_chern",
        [](double M, double B, int grid) { return chern_number({M, B}, grid); }, py::arg("M"),
        py::arg("B") = 1.0, py::arg("grid") = 32);
    m.def(
        "bhz_bands",
        [](double M, double kx, double ky, double B) { return bands({M, B}, {kx, ky}); },
        py::arg("M"), py::arg("kx"), py::arg("ky"), py::arg("B") = 1.0);
    m.def(
        "berry_curvature",
        [](double M, double kx, double ky, double B) {
            return berry_curvature({M, B}, {kx, ky});
        },
        py::arg("M"), py::arg("kx"), py::arg("ky"), py::arg("B") = 1.0);

    // floquet lattice
    m.def(
        "floquet_spectrum",
        [](const DriveParams& p, int radius, bool tilt) {
            const Eigen::VectorXd s = build_operator(p, Truncation{radius}, tilt).spectrum();
            return std::vector<double>(s.data(), s.data() + s.size());
        },
        py::arg("params"), py::arg("radius") = 4, py::arg("tilt") = true);
    m.def(
        "zero_field_bands",
        [](const DriveParams& p, double kx, double ky) {
            return zero_field_bands(p, {kx, ky});
        },
        py::arg("params"), py::arg("kx"), py::arg("ky"));

    // tomography post-processing
    m.def("rotate_frame", &rotate_frame);
    m.def("project_bloch", &project_bloch);
    m.def("purity", &purity);
    m.def("fidelity", &fidelity);
    m.def(
        "fit_exp_decay",
        [](const std::vector<double>& t, const std::vector<double>& v,
           const std::string& form) {
            return fit_exp_decay(t, v, form == "purity" ? DecayForm::purity
                                                        : DecayForm::fidelity);
        },
        py::arg("times"), py::arg("values"), py::arg("form"));
    m.def(
        "sample_tomography",
        [](const BlochState& b, int shots, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return sample_shots(b, shots, rng).means();
        },
        py::arg("state"), py::arg("shots") = 8192, py::arg("seed") = 0,
        "X/Y/Z expectation estimates from seeded projective readout");

    // noise models
    m.def(
        "mc_chern",
        [](const DriveParams& p, double beta, int realizations, int n_samples, int threads,
           std::uint64_t seed) {
            return mc_chern(p, HeuristicNoiseParams{beta, seed}, realizations, n_samples,
                            threads);
        },
        py::arg("params"), py::arg("beta") = 0.029, py::arg("realizations") = 500,
        py::arg("n_samples") = 800, py::arg("threads") = 1, py::arg("seed") = 0);
    m.def(
        "gaussian_measure",
        [](const BlochState& b, double sigma, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return gaussian_measure(b, GaussianNoiseParams{sigma, seed}, rng);
        },
        py::arg("state"), py::arg("sigma") = 0.24, py::arg("seed") = 0);
    m.def(
        "perturb_state",
        [](const BlochState& b, double theta, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return perturb_state(b, theta, rng);
        },
        py::arg("state"), py::arg("theta"), py::arg("seed") = 0);
}
