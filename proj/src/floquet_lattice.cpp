#include "floqlab/floquet_lattice.hpp"

#include <cmath>

#include "floqlab/error.hpp"
#include "floqlab/propagator.hpp"

namespace floqlab {

void Truncation::validate() const {
    if (radius < 1) throw InvalidArgument("Truncation: radius must be >= 1");
}

HoppingTable fourier_hoppings(const DriveParams& p) {
    p.validate();
    const complexd i{0.0, 1.0};
    Eigen::Matrix2cd sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, -i, i, 0;
    sz << 1, 0, 0, -1;

    HoppingTable table;
    table[{0, 0}] = p.eta * p.M * sz;
    table[{1, 0}] = 0.5 * p.eta * (i * sx - sz);
    table[{-1, 0}] = 0.5 * p.eta * (-i * sx - sz);
    table[{0, 1}] = 0.5 * p.eta * (i * sy - sz);
    table[{0, -1}] = 0.5 * p.eta * (-i * sy - sz);
    return table;
}

QuasienergyOperator build_operator(const DriveParams& p, const Truncation& tr, bool include_tilt) {
    tr.validate();
    QuasienergyOperator op;
    op.truncation = tr;
    op.hoppings = fourier_hoppings(p);
    op.omega1 = p.omega1;
    op.omega2 = p.omega2;
    op.phi1 = p.phi1;
    op.phi2 = p.phi2;
    op.include_tilt = include_tilt;
    return op;
}

Eigen::MatrixXcd QuasienergyOperator::dense() const {
    const int N = truncation.radius;
    const int side = truncation.side();
    const Eigen::Index dim = truncation.dimension();
    auto index = [&](int n1, int n2) {
        return 2 * (static_cast<Eigen::Index>(n1 + N) * side + (n2 + N));
    };

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n1 = -N; n1 <= N; ++n1) {
        for (int n2 = -N; n2 <= N; ++n2) {
            const Eigen::Index row = index(n1, n2);
            for (const auto& [pvec, block] : hoppings) {
                const int m1 = n1 - pvec.first;
                const int m2 = n2 - pvec.second;
                if (std::abs(m1) > N || std::abs(m2) > N) continue;
                // <n| H |n - p> = h_p exp(-i p . phi)
                const double pdotphi = pvec.first * phi1 + pvec.second * phi2;
                H.block<2, 2>(row, index(m1, m2)) += block * std::polar(1.0, -pdotphi);
            }
            if (include_tilt) {
                const double tilt = -(n1 * omega1 + n2 * omega2);
                H.block<2, 2>(row, row) += tilt * Eigen::Matrix2cd::Identity();
            }
        }
    }
    return H;
}

Eigen::VectorXd QuasienergyOperator::spectrum() const {
    const Eigen::MatrixXcd H = dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("QuasienergyOperator: eigensolve failed");
    return solver.eigenvalues();
}

double QuasienergyOperator::hermiticity_defect() const {
    const Eigen::MatrixXcd H = dense();
    return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

std::pair<double, double> zero_field_bands(const DriveParams& p, const KPoint& k) {
    p.validate();
    const double th1 = k.kx + p.phi1;
    const double th2 = k.ky + p.phi2;
    const double hx = std::sin(th1);
    const double hy = std::sin(th2);
    const double hz = p.M - std::cos(th1) - std::cos(th2);
    const double h = p.eta * std::sqrt(hx * hx + hy * hy + hz * hz);
    return {-h, h};
}

double adiabatic_consistency(const DriveParams& p, int n_samples) {
    const Trajectory traj = evolve(p, n_samples);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        const FieldVector h{p.eta * std::sin(p.phi1 + p.omega1 * t),
                            p.eta * std::sin(p.phi2 + p.omega2 * t),
                            p.eta * (p.M - std::cos(p.phi1 + p.omega1 * t) -
                                     std::cos(p.phi2 + p.omega2 * t))};
        const double hn = h.norm();
        if (hn < 1e-12) throw DegenerateField("adiabatic_consistency: gap closes on the path");
        // the band the propagator follows is the field-aligned one
        const BlochState followed{h.hx / hn, h.hy / hn, h.hz / hn};
        worst = std::max(worst, bloch_distance(traj.states[k], followed));
    }
    return worst;
}

}  // namespace floqlab
