#include "floqlab/observables.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "floqlab/error.hpp"

namespace floqlab {

namespace {

void integrate_work(const Trajectory& traj, std::vector<double>& W1, std::vector<double>& W2) {
    const std::size_t n = traj.size();
    if (n < 2) throw InvalidArgument("work_series: trajectory needs at least 2 samples");
    W1.assign(n, 0.0);
    W2.assign(n, 0.0);
    auto power = [&](std::size_t k) {
        const auto [d1, d2] = dh_dt(traj.params, traj.times[k]);
        const BlochState& s = traj.states[k];
        return std::pair<double, double>{d1.hx * s.x + d1.hy * s.y + d1.hz * s.z,
                                         d2.hx * s.x + d2.hy * s.y + d2.hz * s.z};
    };
    auto [f1_prev, f2_prev] = power(0);
    for (std::size_t k = 1; k < n; ++k) {
        const auto [f1, f2] = power(k);
        const double half_dt = 0.5 * (traj.times[k] - traj.times[k - 1]);
        W1[k] = W1[k - 1] + half_dt * (f1_prev + f1);
        W2[k] = W2[k - 1] + half_dt * (f2_prev + f2);
        f1_prev = f1;
        f2_prev = f2;
    }
}

}  // namespace

LinearFit linear_fit(const std::vector<double>& t, const std::vector<double>& y, double t0,
                     double t1) {
    if (t.size() != y.size()) throw InvalidArgument("linear_fit: length mismatch");
    double sx = 0.0, sy = 0.0;
    int n = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t0 || t[k] > t1) continue;
        sx += t[k];
        sy += y[k];
        ++n;
    }
    if (n < 3) throw FitFailure("linear_fit: fewer than 3 points in the fit window");
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t0 || t[k] > t1) continue;
        sxx += (t[k] - mx) * (t[k] - mx);
        sxy += (t[k] - mx) * (y[k] - my);
    }
    if (sxx <= 0.0) throw FitFailure("linear_fit: degenerate abscissa");

    LinearFit fit;
    fit.n = n;
    fit.window_t0 = t0;
    fit.window_t1 = t1;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double sse = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t0 || t[k] > t1) continue;
        const double r = y[k] - (fit.intercept + fit.slope * t[k]);
        sse += r * r;
    }
    const double sigma2 = sse / (n - 2);
    const boost::math::students_t_distribution<double> dist(n - 2);
    fit.slope_ci95 = boost::math::quantile(dist, 0.975) * std::sqrt(sigma2 / sxx);
    return fit;
}

std::pair<FieldVector, FieldVector> dh_dt(const DriveParams& p, double t) {
    const auto [th1, th2] = instantaneous_phases(p, t);
    const auto [w1, w2] = instantaneous_frequencies(p, t);
    return {FieldVector{p.eta * w1 * std::cos(th1), 0.0, p.eta * w1 * std::sin(th1)},
            FieldVector{0.0, p.eta * w2 * std::cos(th2), p.eta * w2 * std::sin(th2)}};
}

WorkRecord work_series(const Trajectory& traj, FitWindow window) {
    WorkRecord rec;
    rec.window = window;
    rec.times = traj.times;
    integrate_work(traj, rec.W1, rec.W2);

    double t0 = 0.0;
    const double t1 = traj.times.back();
    if (window == FitWindow::post_ramp) {
        const double period1 = 2.0 * M_PI / traj.params.omega1;
        t0 = traj.params.ramp_duration + period1;
        if (t0 > 0.8 * t1) t0 = 0.0;  // window would eat the run; fit everything
    }
    rec.fit1 = linear_fit(rec.times, rec.W1, t0, t1);
    rec.fit2 = linear_fit(rec.times, rec.W2, t0, t1);
    return rec;
}

ChernEstimate chern_from_work(const WorkRecord& rec, const DriveParams& p) {
    const double scale = M_PI / (p.omega1 * p.omega2);
    return {scale * (rec.fit1.slope - rec.fit2.slope),
            scale * std::hypot(rec.fit1.slope_ci95, rec.fit2.slope_ci95)};
}

double energy_balance(const Trajectory& traj) {
    std::vector<double> W1, W2;
    integrate_work(traj, W1, W2);
    auto energy = [&](std::size_t k) {
        const FieldVector h = field_at(traj.params, traj.times[k]);
        const BlochState& s = traj.states[k];
        return h.hx * s.x + h.hy * s.y + h.hz * s.z;
    };
    return std::abs(energy(traj.size() - 1) - energy(0) - W1.back() - W2.back());
}

}  // namespace floqlab
