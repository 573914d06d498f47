#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace floqlab {

// Dense state-vector evolution is the correctness harness here; anything past
// 12 qubits is out of capability by design.
inline constexpr int kMaxArrayQubits = 12;

using Waveform = std::function<double(double)>;

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

// Tensor-product Pauli word over n qubits (qubit q is bit q of the basis
// index).
struct PauliString {
    std::vector<PauliOp> ops;

    std::string label() const;  // e.g. "ZXI"
};

// One Hermitian contribution c(t) * scale * P.
struct HamiltonianTerm {
    PauliString string;
    Waveform coeff;      // real-valued
    double scale = 1.0;  // static prefactor, carries signs from rotations
};

struct LatticeSpec {
    int n_qubits = 0;
    std::vector<std::pair<int, int>> edges;  // directed: first site carries Z in CR terms
    std::vector<int> bipartition;            // empty, or one 0/1 label per site

    void validate() const;  // simple graph; bipartition must 2-color the edges
};

struct TimeDependentHamiltonian {
    int n_qubits = 0;
    std::vector<HamiltonianTerm> terms;

    Eigen::Index dimension() const { return Eigen::Index(1) << n_qubits; }
    std::vector<double> coefficients(double t) const;  // scale * coeff(t) per term
    Eigen::MatrixXcd evaluate(double t) const;
    double hermiticity_defect(double t) const;
};

// Per-site drive field; null entries mean zero.
struct SiteField {
    Waveform hx, hy, hz;
};

// H = sum_i hx_i X + hy_i Y + (hz_i + delta_i) Z + sum_<ij> g_ij (XX + YY),
// the tunable-coupling form. Empty deltas mean zero detuning.
TimeDependentHamiltonian build_tunable_xy(const LatticeSpec& spec,
                                          const std::vector<SiteField>& fields,
                                          const std::vector<double>& deltas,
                                          const std::vector<Waveform>& couplings);

// H = sum_i h_i . sigma_i + sum_<ij> gx_ij Z_i X_j + gy_ij Z_i Y_j,
// the cross-resonance form (Z on the edge's first site).
TimeDependentHamiltonian build_cross_resonance(const LatticeSpec& spec,
                                               const std::vector<SiteField>& fields,
                                               const std::vector<Waveform>& gx,
                                               const std::vector<Waveform>& gy);

// Conjugation by the sublattice-B rotation taking Z -> X and X -> -Z on every
// B site; acts on the term table, so spectra are preserved exactly.
TimeDependentHamiltonian bipartite_rotate(const LatticeSpec& spec,
                                          const TimeDependentHamiltonian& H);

// g~ = (gx - i gy)/2 and its inverse.
std::complex<double> tilde_g(double gx, double gy);
std::pair<double, double> tilde_g_components(const std::complex<double>& g);

// Drive tones closer than min_spacing collide (crosstalk risk); returns the
// offending index pairs.
std::vector<std::pair<int, int>> frequency_crowding_report(const std::vector<double>& tones,
                                                           double min_spacing);

struct ArrayTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
};

// Midpoint-sampled piecewise-constant evolution; the step exponential comes
// from a dense Hermitian eigendecomposition that is reused while no term
// coefficient has moved more than 1e-3 since it was built.
ArrayTrajectory evolve_array(const TimeDependentHamiltonian& H, const Eigen::VectorXcd& psi0,
                             double t_total, double dt, int n_samples);

}  // namespace floqlab
