#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "floqlab/spin.hpp"

namespace floqlab {

// Outcome counts of projective X/Y/Z-basis readout, one experiment per basis.
struct ShotRecord {
    int shots_per_basis = 0;
    std::array<int, 3> plus_counts{0, 0, 0};  // +1 outcomes in X, Y, Z

    std::array<double, 3> means() const;  // (n_plus - n_minus) / shots per basis
};

// Raw expectation-value vector (possibly longer than 1), its Bloch-sphere
// projection, and the purity of the clamped estimate.
struct DensityEstimate {
    std::array<double, 3> raw{0.0, 0.0, 0.0};
    BlochState projected;
    double purity = 1.0;
};

// Projective readout: per basis i, +1 with probability (1 + b_i)/2,
// independent across bases.
ShotRecord sample_shots(const BlochState& b, int shots, std::mt19937_64& rng);

DensityEstimate estimate_state(const ShotRecord& rec);

// Virtual-Z frame rotation applied in post-processing:
//   sx' = cos(phi) sx + sin(phi) sy, sy' = -sin(phi) sx + cos(phi) sy.
std::array<double, 3> rotate_frame(const std::array<double, 3>& raw, double phi);

// raw / |raw|; throws DegenerateEstimate on the zero vector (maximally mixed
// estimate has no direction).
BlochState project_bloch(const std::array<double, 3>& raw);

// tr(rho^2) = 1/2 + |r|^2 / 2 with |r| clamped to <= 1 (single-qubit
// maximum-likelihood correction).
double purity(const std::array<double, 3>& raw);

// (1 + a.b)/2 for unit Bloch vectors.
double fidelity(const BlochState& a, const BlochState& b);

enum class DecayForm {
    purity,    // 1/2 + a exp(-t/lambda)
    fidelity,  // b exp(-t/xi)
};

struct ExpDecayFit {
    double amplitude = 0.0;
    double timescale = 0.0;
    bool timescale_unbounded = false;  // decay indistinguishable from constant
    double rms_residual = 0.0;
};

// Least squares on the stated decay form; the amplitude is profiled out
// analytically and the timescale searched from three log-spaced starts.
// Throws InvalidArgument for fewer than 3 points or values far outside the
// form's range, FitFailure when the search degenerates.
ExpDecayFit fit_exp_decay(const std::vector<double>& times, const std::vector<double>& values,
                          DecayForm form);

}  // namespace floqlab
