#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>

#include "floqlab/bhz.hpp"
#include "floqlab/drive.hpp"

namespace floqlab {

// Open-boundary truncation: sites n = (n1, n2) with |n_i| <= radius.
struct Truncation {
    int radius = 6;

    void validate() const;
    int side() const { return 2 * radius + 1; }
    Eigen::Index dimension() const { return 2 * static_cast<Eigen::Index>(side()) * side(); }
};

using HoppingTable = std::map<std::pair<int, int>, Eigen::Matrix2cd>;

// Two-band lattice dual of the driven qubit: BHZ-type hoppings from the
// Fourier components of the drive plus the -n.omega tilt (the drive-photon
// "electric field"). Open boundaries; the tilt forbids periodic closure.
struct QuasienergyOperator {
    Truncation truncation;
    HoppingTable hoppings;  // p-vector -> 2x2 block (phase offsets not folded in)
    double omega1 = 0.0, omega2 = 0.0;
    double phi1 = 0.0, phi2 = 0.0;
    bool include_tilt = true;

    Eigen::MatrixXcd dense() const;
    Eigen::VectorXd spectrum() const;  // ascending eigenvalues of dense()
    double hermiticity_defect() const;
};

// The five Fourier blocks h_p of the drive field, p in {(0,0), (+-1,0),
// (0,+-1)}, satisfying sum_p h_p exp(-i p.theta) = h(theta).sigma and the
// Hermiticity pairing h_{-p} = h_p^dagger.
HoppingTable fourier_hoppings(const DriveParams& p);

QuasienergyOperator build_operator(const DriveParams& p, const Truncation& tr, bool include_tilt);

// Bloch bands of the zero-tilt lattice: exactly the BHZ bands at momentum
// shifted by the drive phase offsets, scaled by eta.
std::pair<double, double> zero_field_bands(const DriveParams& p, const KPoint& k);

// Max Bloch distance between the propagated trajectory and the instantaneous
// eigenstate it started in, evaluated at h(k0 + omega t) with k0 =
// (phi1, phi2) - the adiabatic picture induced by the tilt. Meaningful for
// gapped, slow drives.
double adiabatic_consistency(const DriveParams& p, int n_samples = 2001);

}  // namespace floqlab
