#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "floqlab/spin.hpp"

namespace floqlab {

// Two-tone quasiperiodic drive
//   h(t) = eta * ( sin th1, sin th2, M - cos th1 - cos th2 ),
//   th_i(t) = phi_i + integral of omega_i(s) ds,
// with an optional linear frequency ramp omega_i(s) = omega_i * min(s/ramp, 1).
// Everything lives in one dimensionless unit system: energies in units of the
// drive scale (eta = 1 by default), times in the inverse.
struct DriveParams {
    double eta = 1.0;
    double omega1 = 0.125;
    double omega2 = 0.125 * 1.6180339887498949;  // golden-ratio multiple
    double phi1 = 0.0;
    double phi2 = 0.0;
    double M = 1.0;
    double ramp_duration = 0.0;  // 0 disables the ramp
    double t_total = 1005.3096491487338;         // 20 * 2 pi / omega1
    double dt = 0.0;                             // 0 selects the default step

    // Largest step with step * max|h| <= 0.05 over the drive manifold.
    double default_dt() const;
    double step() const { return dt > 0.0 ? dt : default_dt(); }

    void validate() const;  // throws InvalidArgument on a bad combination
};

// Hardware-facing constants for the envelope conversion layer. The internal
// energy unit is identified with omega_max, so eta = 0.9 reproduces the
// experimental eta = 0.9 * Omega_max operating point.
struct PhysicalUnits {
    double omega_max = 36.9e6;     // rad/s
    double dt_hardware = 0.22e-9;  // s

    void validate() const;
};

// Sampled complex drive shape d(t_k) on the hardware grid plus the indices of
// samples that violate |d| <= 1 (reported, never altered).
struct Envelope {
    std::vector<double> t_seconds;
    std::vector<std::complex<double>> d;
    double delta_c = 0.0;
    std::vector<std::size_t> clipped;
};

// th_i(t) with continuous-phase ramp semantics (phase = integral of the
// instantaneous frequency). Throws InvalidArgument for t outside [0, t_total].
std::pair<double, double> instantaneous_phases(const DriveParams& p, double t);

// Instantaneous frequencies omega_i(t) (the ramped values).
std::pair<double, double> instantaneous_frequencies(const DriveParams& p, double t);

FieldVector field_at(const DriveParams& p, double t);

// phi(t) = -2 * integral_0^t h_z(t') dt'. Closed form without a ramp; with a
// ramp the [0, ramp] segment is integrated by composite Simpson with panel
// width <= dt (relative error <= 1e-8) and the tail is closed form.
double virtual_z_phase(const DriveParams& p, double t);

// d(t_k) = (h_x + i h_y)(t_k) * exp(i phi(t_k)) sampled-and-held on the
// hardware grid, with h in units of omega_max.
Envelope synthesize_envelope(const DriveParams& p, const PhysicalUnits& u);

}  // namespace floqlab
