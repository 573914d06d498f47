#include "floqlab/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "floqlab/error.hpp"
#include "floqlab/propagator.hpp"

namespace floqlab {

void HeuristicNoiseParams::validate() const {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw InvalidArgument("HeuristicNoiseParams: beta must be in (0, 1)");
}

void GaussianNoiseParams::validate() const {
    if (!(sigma_noise >= 0.0) || !(sigma_noise < 1.0))
        throw InvalidArgument("GaussianNoiseParams: sigma_noise must be in [0, 1)");
}

double sample_perturbation_angle(const HeuristicNoiseParams& p, std::mt19937_64& rng) {
    p.validate();
    std::exponential_distribution<double> exp_dist(1.0 / p.beta);
    const double x = std::min(exp_dist(rng), 1.0);
    return std::acos(1.0 - 2.0 * x);
}

BlochState perturb_state(const BlochState& b, double theta, std::mt19937_64& rng) {
    if (std::abs(b.norm() - 1.0) > 1e-6)
        throw InvalidArgument("perturb_state: state must be on the Bloch sphere");
    std::normal_distribution<double> gauss(0.0, 1.0);
    double ax = 0.0, ay = 0.0, az = 0.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double gx = gauss(rng), gy = gauss(rng), gz = gauss(rng);
        const double along = gx * b.x + gy * b.y + gz * b.z;
        ax = gx - along * b.x;
        ay = gy - along * b.y;
        az = gz - along * b.z;
        const double n = std::sqrt(ax * ax + ay * ay + az * az);
        if (n > 1e-9) {
            ax /= n, ay /= n, az /= n;
            break;
        }
        if (attempt == 63) throw NumericalError("perturb_state: axis sampling degenerated");
    }
    // axis is orthogonal to b, so Rodrigues reduces to
    // b' = cos(theta) b + sin(theta) (axis x b)
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * b.x + s * (ay * b.z - az * b.y),
            c * b.y + s * (az * b.x - ax * b.z),
            c * b.z + s * (ax * b.y - ay * b.x)};
}

BlochState gaussian_measure(const BlochState& b, const GaussianNoiseParams& p,
                            std::mt19937_64& rng) {
    p.validate();
    if (std::abs(b.norm() - 1.0) > 1e-6)
        throw InvalidArgument("gaussian_measure: state must be on the Bloch sphere");
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 2; ++attempt) {
        const double rx = b.x + p.sigma_noise * gauss(rng);
        const double ry = b.y + p.sigma_noise * gauss(rng);
        const double rz = b.z + p.sigma_noise * gauss(rng);
        const double norm = std::sqrt(rx * rx + ry * ry + rz * rz);
        if (norm >= 1e-12) return {rx / norm, ry / norm, rz / norm};
    }
    throw DegenerateEstimate("gaussian_measure: perturbed vector vanished twice");
}

std::mt19937_64 realization_rng(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over the (seed, index) pair
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return std::mt19937_64(z);
}

McChernResult mc_chern(const DriveParams& p, const HeuristicNoiseParams& n, int realizations,
                       int n_samples, int threads, FitWindow window) {
    n.validate();
    if (realizations < 2) throw InvalidArgument("mc_chern: need at least 2 realizations");

    const Trajectory clean = evolve(p, n_samples);
    McChernResult result;
    result.clean_value = chern_from_work(work_series(clean, window), p).value;

    std::vector<double> values(realizations, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::string> errors(realizations);

    auto run_range = [&](int lo, int hi) {
        Trajectory perturbed = clean;
        for (int r = lo; r < hi; ++r) {
            try {
                std::mt19937_64 rng = realization_rng(n.seed, static_cast<std::uint64_t>(r));
                for (std::size_t k = 0; k < clean.size(); ++k) {
                    const double theta = sample_perturbation_angle(n, rng);
                    perturbed.states[k] = perturb_state(clean.states[k], theta, rng);
                }
                values[r] = chern_from_work(work_series(perturbed, window), p).value;
            } catch (const Error& e) {
                errors[r] = e.what();
            }
        }
    };

    const int nthreads = std::clamp(threads, 1, realizations);
    if (nthreads == 1) {
        run_range(0, realizations);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (realizations + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(realizations, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    for (int r = 0; r < realizations; ++r) {
        if (std::isnan(values[r])) {
            result.failures.emplace_back(r, errors[r]);
        } else {
            result.samples.push_back(values[r]);
            result.sample_indices.push_back(r);
        }
    }
    if (result.samples.size() < static_cast<std::size_t>(std::ceil(0.9 * realizations)))
        throw NumericalError("mc_chern: more than 10% of realizations failed");

    // compensated two-pass mean/stddev so aggregation order never matters
    double sum = 0.0, comp = 0.0;
    for (const double v : result.samples) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    result.mean = sum / result.samples.size();
    double var = 0.0, vcomp = 0.0;
    for (const double v : result.samples) {
        const double d = (v - result.mean) * (v - result.mean) - vcomp;
        const double t = var + d;
        vcomp = (t - var) - d;
        var = t;
    }
    result.stddev = std::sqrt(var / (result.samples.size() - 1));
    return result;
}

}  // namespace floqlab
