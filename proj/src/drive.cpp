#include "floqlab/drive.hpp"

#include <cmath>

#include "floqlab/error.hpp"

namespace floqlab {

namespace {

constexpr double kTimeSlack = 1e-9;

void check_time(const DriveParams& p, double t) {
    if (!std::isfinite(t) || t < -kTimeSlack || t > p.t_total * (1.0 + 1e-12) + kTimeSlack)
        throw InvalidArgument("time outside [0, t_total]");
}

double hz_at(const DriveParams& p, double t) {
    const auto [th1, th2] = instantaneous_phases(p, t);
    return p.eta * (p.M - std::cos(th1) - std::cos(th2));
}

// Composite Simpson for integral_a^b h_z dt with panel width <= max_w.
double hz_integral_simpson(const DriveParams& p, double a, double b, double max_w) {
    if (b <= a) return 0.0;
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_w)));
    const double w = (b - a) / n;
    double acc = 0.0;
    double f_left = hz_at(p, a);
    for (int i = 0; i < n; ++i) {
        const double xl = a + i * w;
        const double f_mid = hz_at(p, xl + 0.5 * w);
        const double f_right = hz_at(p, xl + w);
        acc += (w / 6.0) * (f_left + 4.0 * f_mid + f_right);
        f_left = f_right;
    }
    return acc;
}

// integral_a^t h_z dt' when both ends are past the ramp (phases linear in t).
double hz_integral_linear(const DriveParams& p, double a, double t) {
    const auto [th1a, th2a] = instantaneous_phases(p, a);
    const auto [th1t, th2t] = instantaneous_phases(p, t);
    return p.eta * (p.M * (t - a) - (std::sin(th1t) - std::sin(th1a)) / p.omega1 -
                    (std::sin(th2t) - std::sin(th2a)) / p.omega2);
}

}  // namespace

double DriveParams::default_dt() const {
    // max |h| over the drive manifold is exactly eta * (|M| + 2)
    return 0.05 / (eta * (std::abs(M) + 2.0));
}

void DriveParams::validate() const {
    const bool finite = std::isfinite(eta) && std::isfinite(omega1) && std::isfinite(omega2) &&
                        std::isfinite(phi1) && std::isfinite(phi2) && std::isfinite(M) &&
                        std::isfinite(ramp_duration) && std::isfinite(t_total) && std::isfinite(dt);
    if (!finite) throw InvalidArgument("DriveParams: non-finite field");
    if (eta <= 0.0) throw InvalidArgument("DriveParams: eta must be > 0");
    if (omega1 <= 0.0 || omega2 <= 0.0) throw InvalidArgument("DriveParams: omega1, omega2 must be > 0");
    if (dt < 0.0) throw InvalidArgument("DriveParams: dt must be >= 0 (0 selects the default)");
    if (t_total < step()) throw InvalidArgument("DriveParams: t_total must be >= dt");
    if (ramp_duration < 0.0) throw InvalidArgument("DriveParams: ramp_duration must be >= 0");
    if (ramp_duration > t_total) throw InvalidArgument("DriveParams: ramp_duration must be <= t_total");
}

void PhysicalUnits::validate() const {
    if (!(omega_max > 0.0) || !(dt_hardware > 0.0))
        throw InvalidArgument("PhysicalUnits: omega_max and dt_hardware must be > 0");
}

std::pair<double, double> instantaneous_phases(const DriveParams& p, double t) {
    check_time(p, t);
    const double r = p.ramp_duration;
    if (r <= 0.0 || t >= r) {
        const double shift = t - 0.5 * r;  // ramp contributes omega*r/2
        return {p.phi1 + p.omega1 * shift, p.phi2 + p.omega2 * shift};
    }
    const double q = t * t / (2.0 * r);
    return {p.phi1 + p.omega1 * q, p.phi2 + p.omega2 * q};
}

std::pair<double, double> instantaneous_frequencies(const DriveParams& p, double t) {
    check_time(p, t);
    const double r = p.ramp_duration;
    const double scale = (r > 0.0 && t < r) ? t / r : 1.0;
    return {p.omega1 * scale, p.omega2 * scale};
}

FieldVector field_at(const DriveParams& p, double t) {
    const auto [th1, th2] = instantaneous_phases(p, t);
    return {p.eta * std::sin(th1), p.eta * std::sin(th2),
            p.eta * (p.M - std::cos(th1) - std::cos(th2))};
}

double virtual_z_phase(const DriveParams& p, double t) {
    check_time(p, t);
    const double r = p.ramp_duration;
    if (r <= 0.0) return -2.0 * hz_integral_linear(p, 0.0, t);
    const double w = p.step();
    if (t <= r) return -2.0 * hz_integral_simpson(p, 0.0, t, w);
    return -2.0 * (hz_integral_simpson(p, 0.0, r, w) + hz_integral_linear(p, r, t));
}

Envelope synthesize_envelope(const DriveParams& p, const PhysicalUnits& u) {
    p.validate();
    u.validate();
    Envelope env;
    const double dt_int = u.dt_hardware * u.omega_max;  // hardware grid in internal time
    const std::size_t n = static_cast<std::size_t>(std::floor(p.t_total / dt_int)) + 1;
    env.t_seconds.reserve(n);
    env.d.reserve(n);

    const double r = p.ramp_duration;
    const double phi_ramp = (r > 0.0) ? -2.0 * hz_integral_simpson(p, 0.0, r, p.step()) : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = k * dt_int;
        double phi;
        if (r <= 0.0) {
            phi = -2.0 * hz_integral_linear(p, 0.0, t);
        } else if (t <= r) {
            phi = -2.0 * hz_integral_simpson(p, 0.0, t, p.step());
        } else {
            phi = phi_ramp - 2.0 * hz_integral_linear(p, r, t);
        }
        const FieldVector h = field_at(p, t);
        const std::complex<double> d = std::complex<double>(h.hx, h.hy) *
                                       std::polar(1.0, phi);
        if (std::abs(d) > 1.0) env.clipped.push_back(k);
        env.t_seconds.push_back(k * u.dt_hardware);
        env.d.push_back(d);
    }
    return env;
}

}  // namespace floqlab
