#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "floqlab/error.hpp"
#include "floqlab/propagator.hpp"

using namespace floqlab;

namespace {

constexpr double kGolden = 1.6180339887498949;

DriveParams canonical(double M) {
    DriveParams p;
    p.omega1 = 0.125;
    p.omega2 = 0.125 * kGolden;
    p.M = M;
    p.t_total = 20.0 * 2.0 * M_PI / p.omega1;
    p.ramp_duration = 14.75;
    return p;
}

// Test-only reference integrator: 4th-order commutator-free Magnus (CF4),
// two exponentials per step with the field at the Gauss points. Independent
// of the production stepping path.
Spinor cf4_final_state(const DriveParams& p, double dt) {
    const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
    const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
    const double x1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
    const double x2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

    const long steps = static_cast<long>(std::ceil(p.t_total / dt));
    const double w = p.t_total / steps;
    Spinor psi = initial_state(p);
    for (long k = 0; k < steps; ++k) {
        const double t0 = k * w;
        const FieldVector h1 = field_at(p, t0 + c1 * w);
        const FieldVector h2 = field_at(p, t0 + c2 * w);
        const FieldVector ga = h1 * x1 + h2 * x2;
        const FieldVector gb = h1 * x2 + h2 * x1;
        psi = pauli_exp(gb, w).apply(pauli_exp(ga, w).apply(psi));
    }
    return psi;
}

}  // namespace

TEST_CASE("initial_state is the field-aligned eigenstate of h(0)") {
    // h(0) = (0, 0, M - 2) at zero phase offsets
    CHECK(bloch_distance(bloch_of(initial_state(canonical(1.0))), {0.0, 0.0, -1.0}) < 1e-14);
    CHECK(bloch_distance(bloch_of(initial_state(canonical(3.0))), {0.0, 0.0, 1.0}) < 1e-14);
    CHECK_THROWS_AS(initial_state(canonical(2.0)), DegenerateField);
}

TEST_CASE("static-field limit stays at the pole") {
    DriveParams p;
    p.omega1 = 1e-12;
    p.omega2 = 1e-12 * kGolden;
    p.M = 3.0;
    p.t_total = 10.0;
    const Trajectory traj = evolve(p, 50);
    for (const BlochState& s : traj.states)
        CHECK(bloch_distance(s, {0.0, 0.0, 1.0}) < 1e-9);
}

TEST_CASE("evolve matches the CF4 reference integrator") {
    DriveParams p = canonical(1.0);
    p.dt = 1e-3;  // fine enough for the second-order scheme to reach 1e-6
    const Trajectory traj = evolve(p, 2);
    const Spinor ref = cf4_final_state(p, p.dt / 64.0);
    const Spinor ref_check = cf4_final_state(p, p.dt / 128.0);
    REQUIRE(bloch_distance(bloch_of(ref), bloch_of(ref_check)) < 1e-10);  // oracle converged
    CHECK(bloch_distance(traj.states.back(), bloch_of(ref)) < 1e-6);
}

TEST_CASE("paper-parity sampling grid") {
    const DriveParams p = canonical(1.0);
    const Trajectory traj = evolve(p, 800);
    REQUIRE(traj.size() == 800);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(p.t_total).epsilon(1e-15));
    for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
    for (const BlochState& s : traj.states) CHECK(std::abs(s.norm() - 1.0) < 1e-12);
}

TEST_CASE("determinism: identical params give bit-identical trajectories") {
    const DriveParams p = canonical(1.3);
    const Trajectory a = evolve(p, 400);
    const Trajectory b = evolve(p, 400);
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.states.data(), b.states.data(), a.size() * sizeof(BlochState)) == 0);
    CHECK(std::memcmp(a.times.data(), b.times.data(), a.size() * sizeof(double)) == 0);
}

TEST_CASE("unitarity drift over 1e5 steps") {
    DriveParams p = canonical(1.0);
    p.dt = p.t_total / 100000.0;
    const Trajectory traj = evolve(p, 100);
    CHECK(traj.norm_defect < 1e-8);
    for (const BlochState& s : traj.states) CHECK(std::abs(s.norm() - 1.0) < 1e-10);
}

TEST_CASE("adiabatic limit hugs the instantaneous ground state") {
    DriveParams p;
    p.omega1 = 0.02;
    p.omega2 = 0.02 * kGolden;
    p.M = 3.0;
    p.t_total = 2.0 * M_PI / p.omega1;
    const Trajectory traj = evolve(p, 1500);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const FieldVector h = field_at(p, traj.times[k]);
        const double hn = h.norm();
        worst = std::max(worst, bloch_distance(traj.states[k],
                                               {h.hx / hn, h.hy / hn, h.hz / hn}));
    }
    CHECK(worst <= 0.1);
}

TEST_CASE("hemisphere confinement distinguishes the phases") {
    const Trajectory trivial = evolve(canonical(3.0), 800);
    bool sign_flip = false;
    for (const BlochState& s : trivial.states) sign_flip |= (s.z * trivial.states[0].z < 0.0);
    CHECK_FALSE(sign_flip);

    const Trajectory topological = evolve(canonical(1.0), 800);
    bool north = false, south = false;
    for (const BlochState& s : topological.states) {
        north |= s.z > 0.0;
        south |= s.z < 0.0;
    }
    CHECK(north);
    CHECK(south);
}

TEST_CASE("convergence_report shows second order") {
    DriveParams p = canonical(1.0);
    p.t_total = 50.0;
    p.ramp_duration = 0.0;
    p.dt = 0.04;
    const ConvergenceReport rep = convergence_report(p, 4);
    REQUIRE(rep.rows.size() == 4);
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        CHECK(rep.rows[i].error < rep.rows[i - 1].error);
    CHECK(rep.observed_order > 1.7);
    CHECK(rep.observed_order < 2.4);
}

TEST_CASE("convergence_report on a static field is exact") {
    DriveParams p;
    p.omega1 = 1e-12;
    p.omega2 = 1e-12 * kGolden;
    p.M = 3.0;
    p.t_total = 5.0;
    p.dt = 0.1;
    const ConvergenceReport rep = convergence_report(p, 3);
    for (const auto& row : rep.rows) CHECK(row.error < 1e-11);
}

TEST_CASE("left-endpoint sampling mode is available and close") {
    DriveParams p = canonical(1.0);
    p.t_total = 100.0;
    const Trajectory mid = evolve(p, 100, FieldSampling::midpoint);
    const Trajectory left = evolve(p, 100, FieldSampling::left);
    // same physics, first-order-different discretization
    CHECK(bloch_distance(mid.states.back(), left.states.back()) < 0.05);
    CHECK(bloch_distance(mid.states.back(), left.states.back()) > 0.0);
}

TEST_CASE("evolve rejects bad sampling requests") {
    CHECK_THROWS_AS(evolve(canonical(1.0), 1), InvalidArgument);
}
