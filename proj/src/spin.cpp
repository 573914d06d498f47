#include "floqlab/spin.hpp"

#include <cmath>

#include "floqlab/error.hpp"

namespace floqlab {

namespace {
constexpr double kZeroRotation = 1e-12;
}

double FieldVector::norm() const { return std::sqrt(hx * hx + hy * hy + hz * hz); }

bool FieldVector::finite() const {
    return std::isfinite(hx) && std::isfinite(hy) && std::isfinite(hz);
}

double dot(const FieldVector& a, const FieldVector& b) {
    return a.hx * b.hx + a.hy * b.hy + a.hz * b.hz;
}

FieldVector cross(const FieldVector& a, const FieldVector& b) {
    return {a.hy * b.hz - a.hz * b.hy, a.hz * b.hx - a.hx * b.hz, a.hx * b.hy - a.hy * b.hx};
}

double BlochState::norm() const { return std::sqrt(x * x + y * y + z * z); }

double dot(const BlochState& a, const BlochState& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

double bloch_distance(const BlochState& a, const BlochState& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double Spinor::norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }

Spinor Spinor::normalized() const {
    const double n = norm();
    if (n <= 0.0) throw InvalidArgument("cannot normalize zero spinor");
    return {c0 / n, c1 / n};
}

complexd inner(const Spinor& a, const Spinor& b) {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

Spinor Unitary2::apply(const Spinor& s) const {
    return {u00 * s.c0 + u01 * s.c1, u10 * s.c0 + u11 * s.c1};
}

Unitary2 Unitary2::compose(const Unitary2& rhs) const {
    return {u00 * rhs.u00 + u01 * rhs.u10, u00 * rhs.u01 + u01 * rhs.u11,
            u10 * rhs.u00 + u11 * rhs.u10, u10 * rhs.u01 + u11 * rhs.u11};
}

Unitary2 Unitary2::dagger() const {
    return {std::conj(u00), std::conj(u10), std::conj(u01), std::conj(u11)};
}

double Unitary2::unitarity_defect() const {
    const Unitary2 p = dagger().compose(*this);
    double d = std::abs(p.u00 - complexd{1.0, 0.0});
    d = std::max(d, std::abs(p.u11 - complexd{1.0, 0.0}));
    d = std::max(d, std::abs(p.u01));
    d = std::max(d, std::abs(p.u10));
    return d;
}

Unitary2 pauli_exp(const FieldVector& h, double dt) {
    if (!h.finite() || !std::isfinite(dt)) throw InvalidArgument("pauli_exp: non-finite input");
    if (dt < 0.0) throw InvalidArgument("pauli_exp: dt must be >= 0");
    const double hn = h.norm();
    const double angle = hn * dt;
    if (angle < kZeroRotation) return Unitary2::identity();

    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double nx = h.hx / hn, ny = h.hy / hn, nz = h.hz / hn;
    // cos(a) 1 - i sin(a) (n . sigma)
    return {complexd{c, -s * nz}, complexd{-s * ny, -s * nx},
            complexd{s * ny, -s * nx}, complexd{c, s * nz}};
}

BlochState bloch_of(const Spinor& s) {
    const double n2 = std::norm(s.c0) + std::norm(s.c1);
    if (n2 < 1e-24) throw InvalidArgument("bloch_of: zero spinor");
    const complexd q = std::conj(s.c0) * s.c1;
    return {2.0 * q.real() / n2, 2.0 * q.imag() / n2, (std::norm(s.c0) - std::norm(s.c1)) / n2};
}

Spinor spinor_of(const BlochState& b) {
    const double n = b.norm();
    if (std::abs(n - 1.0) > 1e-9) throw InvalidArgument("spinor_of: Bloch vector must be unit norm");
    const double c0 = std::sqrt(std::max(0.0, (1.0 + b.z / n) / 2.0));
    if (c0 < 1e-12) return {complexd{0.0, 0.0}, complexd{1.0, 0.0}};
    return {complexd{c0, 0.0}, complexd{b.x / n, b.y / n} / (2.0 * c0)};
}

Spinor eigenstate_lower(const FieldVector& h) {
    const double hn = h.norm();
    if (hn <= 0.0) throw DegenerateField("eigenstate_lower: |h| = 0, gap closed");
    // psi_- = (h_z - h, h_x + i h_y) / sqrt(2 h (h - h_z)), singular on the
    // north pole; switch gauge when h - h_z underflows.
    if (hn - h.hz < 1e-9 * hn) {
        const double denom = std::sqrt(2.0 * hn * (hn + h.hz));
        return {complexd{-h.hx, h.hy} / denom, complexd{(hn + h.hz) / denom, 0.0}};
    }
    const double denom = std::sqrt(2.0 * hn * (hn - h.hz));
    return {complexd{(h.hz - hn) / denom, 0.0}, complexd{h.hx, h.hy} / denom};
}

Spinor eigenstate_aligned(const FieldVector& h) {
    return eigenstate_lower({-h.hx, -h.hy, -h.hz});
}

Unitary2 rz(double phi) {
    const complexd e{std::cos(phi / 2.0), -std::sin(phi / 2.0)};
    return {e, {0.0, 0.0}, {0.0, 0.0}, std::conj(e)};
}

}  // namespace floqlab
