#pragma once

#include <array>
#include <complex>

namespace floqlab {

using complexd = std::complex<double>;

// Magnetic field 3-vector, components in units of the drive energy eta
// (hbar = 1, so energies are angular frequencies).
struct FieldVector {
    double hx = 0.0;
    double hy = 0.0;
    double hz = 0.0;

    double norm() const;
    bool finite() const;

    FieldVector operator+(const FieldVector& o) const { return {hx + o.hx, hy + o.hy, hz + o.hz}; }
    FieldVector operator-(const FieldVector& o) const { return {hx - o.hx, hy - o.hy, hz - o.hz}; }
    FieldVector operator*(double s) const { return {hx * s, hy * s, hz * s}; }
};

double dot(const FieldVector& a, const FieldVector& b);
FieldVector cross(const FieldVector& a, const FieldVector& b);

// Unit vector of Pauli expectation values <sigma_x,y,z>.
struct BlochState {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double norm() const;
};

double dot(const BlochState& a, const BlochState& b);
double bloch_distance(const BlochState& a, const BlochState& b);

// Normalized two-component state. Global phase carries no physics here; a
// fixed gauge (c0 real >= 0) is applied only at conversion boundaries.
struct Spinor {
    complexd c0{1.0, 0.0};
    complexd c1{0.0, 0.0};

    double norm() const;
    Spinor normalized() const;
};

complexd inner(const Spinor& a, const Spinor& b);

// 2x2 complex matrix used as the propagation carrier.
struct Unitary2 {
    complexd u00{1.0, 0.0}, u01{0.0, 0.0};
    complexd u10{0.0, 0.0}, u11{1.0, 0.0};

    Spinor apply(const Spinor& s) const;
    Unitary2 compose(const Unitary2& rhs) const;  // (*this) * rhs
    Unitary2 dagger() const;
    // max entrywise deviation of U^dagger U from the identity
    double unitarity_defect() const;

    static Unitary2 identity() { return {}; }
};

// exp(-i (h . sigma) dt) in closed form:
//   cos(|h| dt) * 1 - i sin(|h| dt) * (h_hat . sigma)
// |h| dt below 1e-12 returns the identity (exact in the zero-field limit,
// second-order accurate otherwise). Throws InvalidArgument on non-finite
// input or dt < 0.
Unitary2 pauli_exp(const FieldVector& h, double dt);

// (<sigma_x>, <sigma_y>, <sigma_z>) of a normalized spinor.
// Throws InvalidArgument for a (near-)zero spinor.
BlochState bloch_of(const Spinor& s);

// Inverse of bloch_of with gauge c0 real >= 0; at the south pole the
// convention is (c0, c1) = (0, 1). Input must be unit norm.
Spinor spinor_of(const BlochState& b);

// Lower-band eigenstate of h . sigma (Bloch vector -h/|h|), using the
// two-gauge closed form; see bhz.hpp for the momentum-space variant.
// Throws DegenerateField when |h| = 0.
Spinor eigenstate_lower(const FieldVector& h);

// Upper-band eigenstate (Bloch vector +h/|h|).
Spinor eigenstate_aligned(const FieldVector& h);

// z-rotation exp(-i phi sigma_z / 2) as a carrier for virtual-Z frames.
Unitary2 rz(double phi);

}  // namespace floqlab
