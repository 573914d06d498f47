#pragma once

#include <string>
#include <vector>

#include "floqlab/drive.hpp"
#include "floqlab/spin.hpp"

namespace floqlab {

// Where the piecewise-constant field is sampled within each step. Midpoint is
// the default (second-order); left-endpoint reproduces the hardware's
// sample-and-hold grid bit-for-bit.
enum class FieldSampling { midpoint, left };

// rotating: simulate h(t).sigma directly. lab: the same evolution expressed in
// the virtual-Z lab frame, i.e. states are exp(-i phi(t) sigma_z / 2) images of
// the rotating-frame states; undoing it is the Eq.-style tomography rotation.
enum class Frame { rotating, lab };

struct Trajectory {
    std::vector<double> times;
    std::vector<BlochState> states;
    DriveParams params;
    FieldSampling sampling = FieldSampling::midpoint;
    Frame frame = Frame::rotating;
    double dt_effective = 0.0;
    double norm_defect = 0.0;  // | ||psi_final|| - 1 | accumulated over all steps
    std::string meta;

    std::size_t size() const { return times.size(); }
};

// Instantaneous eigenstate of h(0).sigma that the run follows (the
// field-aligned one, Bloch vector +h/|h|; this choice makes the extracted
// pumping sign match the static Chern number). Throws DegenerateField when
// the gap is closed at t = 0 (e.g. M = 2, phi = 0).
Spinor initial_state(const DriveParams& p);

// Piecewise-constant exact evolution from the instantaneous ground state,
// recorded at n_samples uniform instants including t = 0 and t_total. The
// state inside a step is the exact solution for the held field, so sampling
// never perturbs the dynamics. Deterministic.
Trajectory evolve(const DriveParams& p, int n_samples,
                  FieldSampling sampling = FieldSampling::midpoint,
                  Frame frame = Frame::rotating);

struct ConvergenceRow {
    double dt;
    double error;  // Bloch distance of the final state to the reference run
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double observed_order;  // NaN when errors sit at machine precision
};

// Final-state error under dt-halving, referenced against a run at a quarter of
// the finest step. Midpoint sampling is expected to show order >= 2.
ConvergenceReport convergence_report(const DriveParams& p, int levels = 4);

}  // namespace floqlab
