#include "floqlab/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "floqlab/error.hpp"

namespace floqlab {

std::array<double, 3> ShotRecord::means() const {
    std::array<double, 3> m{};
    for (int i = 0; i < 3; ++i)
        m[i] = (2.0 * plus_counts[i] - shots_per_basis) / static_cast<double>(shots_per_basis);
    return m;
}

ShotRecord sample_shots(const BlochState& b, int shots, std::mt19937_64& rng) {
    if (shots < 1) throw InvalidArgument("sample_shots: shots must be >= 1");
    if (std::abs(b.norm() - 1.0) > 1e-6)
        throw InvalidArgument("sample_shots: state must be on the Bloch sphere");
    ShotRecord rec;
    rec.shots_per_basis = shots;
    const std::array<double, 3> comp{b.x, b.y, b.z};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
        const double p_plus = std::clamp((1.0 + comp[i]) / 2.0, 0.0, 1.0);
        int n = 0;
        for (int s = 0; s < shots; ++s)
            if (unit(rng) < p_plus) ++n;
        rec.plus_counts[i] = n;
    }
    return rec;
}

DensityEstimate estimate_state(const ShotRecord& rec) {
    DensityEstimate est;
    est.raw = rec.means();
    est.projected = project_bloch(est.raw);
    est.purity = purity(est.raw);
    return est;
}

std::array<double, 3> rotate_frame(const std::array<double, 3>& raw, double phi) {
    if (!std::isfinite(raw[0]) || !std::isfinite(raw[1]) || !std::isfinite(raw[2]) ||
        !std::isfinite(phi))
        throw InvalidArgument("rotate_frame: non-finite input");
    const double c = std::cos(phi), s = std::sin(phi);
    return {c * raw[0] + s * raw[1], -s * raw[0] + c * raw[1], raw[2]};
}

BlochState project_bloch(const std::array<double, 3>& raw) {
    const double n = std::sqrt(raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]);
    if (n < 1e-12)
        throw DegenerateEstimate("project_bloch: zero-length estimate has no direction");
    return {raw[0] / n, raw[1] / n, raw[2] / n};
}

double purity(const std::array<double, 3>& raw) {
    const double n2 = raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2];
    return 0.5 + 0.5 * std::min(n2, 1.0);
}

double fidelity(const BlochState& a, const BlochState& b) {
    return std::clamp((1.0 + dot(a, b)) / 2.0, 0.0, 1.0);
}

namespace {

struct ProfiledFit {
    double amplitude;
    double sse;
};

// For fixed timescale the model is linear in the amplitude.
ProfiledFit profile_amplitude(const std::vector<double>& t, const std::vector<double>& y,
                              double floor, double timescale) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double e = std::exp(-t[k] / timescale);
        num += (y[k] - floor) * e;
        den += e * e;
    }
    const double a = den > 0.0 ? num / den : 0.0;
    double sse = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double r = y[k] - floor - a * std::exp(-t[k] / timescale);
        sse += r * r;
    }
    return {a, sse};
}

}  // namespace

ExpDecayFit fit_exp_decay(const std::vector<double>& times, const std::vector<double>& values,
                          DecayForm form) {
    if (times.size() != values.size()) throw InvalidArgument("fit_exp_decay: length mismatch");
    if (times.size() < 3) throw InvalidArgument("fit_exp_decay: need at least 3 points");
    const double floor = (form == DecayForm::purity) ? 0.5 : 0.0;
    const double lo_ok = (form == DecayForm::purity) ? 0.3 : -0.1;
    const double hi_ok = (form == DecayForm::purity) ? 1.2 : 1.1;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!std::isfinite(times[k]) || !std::isfinite(values[k]))
            throw InvalidArgument("fit_exp_decay: non-finite data");
        if (values[k] < lo_ok || values[k] > hi_ok)
            throw InvalidArgument("fit_exp_decay: value outside the form's range");
    }

    const auto [tmin_it, tmax_it] = std::minmax_element(times.begin(), times.end());
    const double span = *tmax_it - *tmin_it;
    if (span <= 0.0) throw FitFailure("fit_exp_decay: degenerate time axis");

    const double lambda_cap = 1e4 * span;
    const double starts[3] = {span / 10.0, span * 4.0, span * 250.0};

    double best_lambda = starts[0];
    double best_sse = std::numeric_limits<double>::infinity();
    for (const double start : starts) {
        // golden-section on log(lambda) within a generous bracket per start;
        // the brackets tile [span/400, lambda_cap] contiguously
        double lo = std::log(std::max(span * 1e-3, start / 40.0));
        double hi = std::log(std::min(lambda_cap, start * 40.0));
        const double gr = 0.6180339887498949;
        double a = lo, b = hi;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = profile_amplitude(times, values, floor, std::exp(x1)).sse;
        double f2 = profile_amplitude(times, values, floor, std::exp(x2)).sse;
        for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
            if (f1 <= f2) {
                b = x2, x2 = x1, f2 = f1;
                x1 = b - gr * (b - a);
                f1 = profile_amplitude(times, values, floor, std::exp(x1)).sse;
            } else {
                a = x1, x1 = x2, f1 = f2;
                x2 = a + gr * (b - a);
                f2 = profile_amplitude(times, values, floor, std::exp(x2)).sse;
            }
        }
        const double lambda = std::exp(0.5 * (a + b));
        const double sse = profile_amplitude(times, values, floor, lambda).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_lambda = lambda;
        }
    }

    ExpDecayFit fit;
    const ProfiledFit prof = profile_amplitude(times, values, floor, best_lambda);
    fit.amplitude = prof.amplitude;
    fit.timescale = best_lambda;
    fit.rms_residual = std::sqrt(prof.sse / times.size());
    if (best_lambda > 0.5 * lambda_cap) {
        // indistinguishable from a constant over this window
        fit.timescale_unbounded = true;
        fit.timescale = std::numeric_limits<double>::infinity();
        double mean = 0.0;
        for (const double v : values) mean += v;
        fit.amplitude = mean / values.size() - floor;
    }
    if (!std::isfinite(fit.amplitude)) throw FitFailure("fit_exp_decay: search degenerated");
    return fit;
}

}  // namespace floqlab
