#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "floqlab/observables.hpp"

namespace floqlab {

// Exponential fidelity-loss model calibrated on the measured average fidelity:
// 1 - F ~ Exp(beta), realized as random rotations of the clean states.
struct HeuristicNoiseParams {
    double beta = 0.029;
    std::uint64_t seed = 0;

    void validate() const;
};

// Additive Gaussian measurement noise per Pauli component, followed by
// Bloch-sphere projection; small sigma gives 1 - F ~ Exp(sigma^2 / 2).
struct GaussianNoiseParams {
    double sigma_noise = 0.24;
    std::uint64_t seed = 0;

    void validate() const;
};

// theta = arccos(1 - 2 min(x, 1)) with x ~ Exp(beta); the clamp removes the
// exponential tail that would mean negative fidelity. Induced fidelity is
// (1 + cos theta)/2 = 1 - min(x, 1).
double sample_perturbation_angle(const HeuristicNoiseParams& p, std::mt19937_64& rng);

// Rotate b by exactly theta about an axis drawn uniformly from the circle
// orthogonal to b (Gaussian vector, orthogonalized, normalized).
BlochState perturb_state(const BlochState& b, double theta, std::mt19937_64& rng);

// project_bloch(b + eta) with eta i.i.d. N(0, sigma) per component. A zero
// perturbed vector is resampled once, then raises DegenerateEstimate.
BlochState gaussian_measure(const BlochState& b, const GaussianNoiseParams& p,
                            std::mt19937_64& rng);

struct McChernResult {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    double clean_value = 0.0;
    std::vector<double> samples;      // per completed realization, in index order
    std::vector<int> sample_indices;  // original realization index per sample
    std::vector<std::pair<int, std::string>> failures;
};

// Monte Carlo distribution of the extracted Chern number under the heuristic
// model: every trajectory sample is perturbed independently, then the full
// work -> fit -> Chern pipeline runs per realization. Realization r draws from
// a stream derived from (seed, r), so parallel and serial runs agree
// bit-for-bit. Fails if more than 10% of realizations abort.
McChernResult mc_chern(const DriveParams& p, const HeuristicNoiseParams& n, int realizations,
                       int n_samples = 800, int threads = 1,
                       FitWindow window = FitWindow::post_ramp);

// Deterministic per-realization RNG stream (splitmix64 of seed and index).
std::mt19937_64 realization_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace floqlab
