#pragma once

#include <utility>

#include "floqlab/spin.hpp"

namespace floqlab {

// Static half-BHZ Chern insulator
//   H(k) = sin(kx) sx + sin(ky) sy + B [M - cos(kx) - cos(ky)] sz,
// the ground-truth band theory behind the driven qubit.
struct BhzParams {
    double M = 1.0;
    double B = 1.0;

    void validate() const;
};

struct KPoint {
    double kx = 0.0;
    double ky = 0.0;
};

// Where the image surface h(BZ) sits relative to the origin. The surface has
// two lobes crossing the z-axis at B(M-2), BM, BM, B(M+2); a nonzero Chern
// number means the origin sits inside one of them.
enum class OriginEnclosure { outside, lobe_lower, lobe_upper };

struct WindingDiagnostic {
    double zmin = 0.0;
    double zmax = 0.0;
    OriginEnclosure origin = OriginEnclosure::outside;
};

FieldVector h_of_k(const BhzParams& p, const KPoint& k);

// (lambda_-, lambda_+) = -+|h(k)|; the gap closes only at M in {-2, 0, 2}.
std::pair<double, double> bands(const BhzParams& p, const KPoint& k);

// Lower-band eigenstate with the two-gauge closed form (<sigma> = -h/|h|).
Spinor eigenstate_lower(const BhzParams& p, const KPoint& k);

// Lower-band Berry curvature F_xy = h . (d_kx h x d_ky h) / (2|h|^3), with the
// analytic momentum derivatives.
double berry_curvature(const BhzParams& p, const KPoint& k);

// Integer Chern number via gauge-invariant plaquette link variables on an
// N x N grid; exact quantization at finite N. Throws DegenerateField if the
// gap closes on the grid.
int chern_number(const BhzParams& p, int grid_n);

WindingDiagnostic winding_diagnostic(const BhzParams& p, int grid_n);

}  // namespace floqlab
