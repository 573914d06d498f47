#pragma once

#include <utility>
#include <vector>

#include "floqlab/propagator.hpp"

namespace floqlab {

// Least-squares line with the standard normal-theory 95% confidence
// half-width on the slope (residual variance, t-quantile).
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_ci95 = 0.0;
    int n = 0;
    double window_t0 = 0.0;
    double window_t1 = 0.0;
};

// Which part of the run the pumping-rate fits see. post_ramp drops the ramp
// window plus the first omega1 period after it (transient suppression); full
// fits everything, as the experiment's figures do.
enum class FitWindow { post_ramp, full };

struct WorkRecord {
    std::vector<double> times;
    std::vector<double> W1;
    std::vector<double> W2;
    LinearFit fit1;
    LinearFit fit2;
    FitWindow window = FitWindow::post_ramp;
};

struct ChernEstimate {
    double value = 0.0;
    double ci95 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& t, const std::vector<double>& y, double t0,
                     double t1);

// Analytic time derivatives of the two drive terms
//   h1 = eta (sin th1, 0, -cos th1),  h2 = eta (0, sin th2, -cos th2),
// with the instantaneous (ramped) frequency as the chain-rule factor.
std::pair<FieldVector, FieldVector> dh_dt(const DriveParams& p, double t);

// Cumulative work of each drive, trapezoid-integrated on the trajectory grid,
// with pumping-rate fits over the selected window.
WorkRecord work_series(const Trajectory& traj, FitWindow window = FitWindow::post_ramp);

// C = pi (slope1 - slope2) / (omega1 omega2); CI propagated in quadrature.
ChernEstimate chern_from_work(const WorkRecord& rec, const DriveParams& p);

// Ehrenfest residual | <H(T)> - <H(0)> - W1(T) - W2(T) | on the trajectory's
// own grid (the eta*M*sigma_z term is static and does no work).
double energy_balance(const Trajectory& traj);

}  // namespace floqlab
