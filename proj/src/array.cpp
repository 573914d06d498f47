#include "floqlab/array.hpp"

#include <cmath>
#include <set>

#include "floqlab/error.hpp"

namespace floqlab {

namespace {

using complexd = std::complex<double>;

double eval(const Waveform& w, double t) { return w ? w(t) : 0.0; }

void check_qubit_count(int n) {
    if (n < 1) throw InvalidArgument("array: need at least one qubit");
    if (n > kMaxArrayQubits)
        throw CapabilityError("array: dense evolution is capped at 12 qubits");
}

// Accumulate c * P into H. A Pauli word has one nonzero per column:
// P|r> = phase(r) |r ^ xmask>.
void add_pauli(Eigen::MatrixXcd& H, const PauliString& s, double c) {
    const int n = static_cast<int>(s.ops.size());
    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::Index xmask = 0;
    for (int q = 0; q < n; ++q)
        if (s.ops[q] == PauliOp::X || s.ops[q] == PauliOp::Y) xmask |= Eigen::Index(1) << q;

    for (Eigen::Index r = 0; r < dim; ++r) {
        complexd phase{c, 0.0};
        for (int q = 0; q < n; ++q) {
            const bool bit = (r >> q) & 1;
            switch (s.ops[q]) {
                case PauliOp::I:
                case PauliOp::X:
                    break;
                case PauliOp::Y:
                    phase *= bit ? complexd{0.0, -1.0} : complexd{0.0, 1.0};
                    break;
                case PauliOp::Z:
                    if (bit) phase = -phase;
                    break;
            }
        }
        H(r ^ xmask, r) += phase;
    }
}

PauliString single_site(int n, int site, PauliOp op) {
    PauliString s;
    s.ops.assign(n, PauliOp::I);
    s.ops[site] = op;
    return s;
}

PauliString two_site(int n, int site_a, PauliOp op_a, int site_b, PauliOp op_b) {
    PauliString s;
    s.ops.assign(n, PauliOp::I);
    s.ops[site_a] = op_a;
    s.ops[site_b] = op_b;
    return s;
}

void append_site_fields(TimeDependentHamiltonian& H, const std::vector<SiteField>& fields) {
    for (int i = 0; i < static_cast<int>(fields.size()); ++i) {
        if (fields[i].hx) H.terms.push_back({single_site(H.n_qubits, i, PauliOp::X), fields[i].hx, 1.0});
        if (fields[i].hy) H.terms.push_back({single_site(H.n_qubits, i, PauliOp::Y), fields[i].hy, 1.0});
        if (fields[i].hz) H.terms.push_back({single_site(H.n_qubits, i, PauliOp::Z), fields[i].hz, 1.0});
    }
}

}  // namespace

std::string PauliString::label() const {
    static const char names[] = {'I', 'X', 'Y', 'Z'};
    std::string out;
    out.reserve(ops.size());
    for (const PauliOp op : ops) out.push_back(names[static_cast<int>(op)]);
    return out;
}

void LatticeSpec::validate() const {
    check_qubit_count(n_qubits);
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n_qubits || j >= n_qubits)
            throw InvalidArgument("LatticeSpec: edge site out of range");
        if (i == j) throw InvalidArgument("LatticeSpec: self-loop edge");
        // directed pairs: (i, j) and (j, i) may coexist (ZX plus XZ on a bond)
        if (!seen.insert({i, j}).second)
            throw InvalidArgument("LatticeSpec: duplicate edge");
    }
    if (!bipartition.empty()) {
        if (static_cast<int>(bipartition.size()) != n_qubits)
            throw InvalidArgument("LatticeSpec: bipartition must label every site");
        for (const int c : bipartition)
            if (c != 0 && c != 1) throw InvalidArgument("LatticeSpec: bipartition labels are 0/1");
        for (const auto& [i, j] : edges)
            if (bipartition[i] == bipartition[j])
                throw InvalidArgument("LatticeSpec: bipartition does not 2-color the edges");
    }
}

std::vector<double> TimeDependentHamiltonian::coefficients(double t) const {
    std::vector<double> c(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) c[k] = terms[k].scale * eval(terms[k].coeff, t);
    return c;
}

Eigen::MatrixXcd TimeDependentHamiltonian::evaluate(double t) const {
    check_qubit_count(n_qubits);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dimension(), dimension());
    for (const auto& term : terms) {
        const double c = term.scale * eval(term.coeff, t);
        if (c != 0.0) add_pauli(H, term.string, c);
    }
    return H;
}

double TimeDependentHamiltonian::hermiticity_defect(double t) const {
    const Eigen::MatrixXcd H = evaluate(t);
    return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

TimeDependentHamiltonian build_tunable_xy(const LatticeSpec& spec,
                                          const std::vector<SiteField>& fields,
                                          const std::vector<double>& deltas,
                                          const std::vector<Waveform>& couplings) {
    spec.validate();
    if (static_cast<int>(fields.size()) != spec.n_qubits)
        throw InvalidArgument("build_tunable_xy: one field per site required");
    if (!deltas.empty() && static_cast<int>(deltas.size()) != spec.n_qubits)
        throw InvalidArgument("build_tunable_xy: deltas must be empty or per-site");
    if (couplings.size() != spec.edges.size())
        throw InvalidArgument("build_tunable_xy: one coupling per edge required");

    TimeDependentHamiltonian H;
    H.n_qubits = spec.n_qubits;
    append_site_fields(H, fields);
    for (int i = 0; i < spec.n_qubits; ++i) {
        const double delta = deltas.empty() ? 0.0 : deltas[i];
        if (delta != 0.0)
            H.terms.push_back({single_site(H.n_qubits, i, PauliOp::Z),
                               [delta](double) { return delta; }, 1.0});
    }
    for (std::size_t e = 0; e < spec.edges.size(); ++e) {
        const auto& [i, j] = spec.edges[e];
        if (!couplings[e]) continue;
        H.terms.push_back({two_site(H.n_qubits, i, PauliOp::X, j, PauliOp::X), couplings[e], 1.0});
        H.terms.push_back({two_site(H.n_qubits, i, PauliOp::Y, j, PauliOp::Y), couplings[e], 1.0});
    }
    return H;
}

TimeDependentHamiltonian build_cross_resonance(const LatticeSpec& spec,
                                               const std::vector<SiteField>& fields,
                                               const std::vector<Waveform>& gx,
                                               const std::vector<Waveform>& gy) {
    spec.validate();
    if (static_cast<int>(fields.size()) != spec.n_qubits)
        throw InvalidArgument("build_cross_resonance: one field per site required");
    if (gx.size() != spec.edges.size() || gy.size() != spec.edges.size())
        throw InvalidArgument("build_cross_resonance: one (gx, gy) pair per edge required");

    TimeDependentHamiltonian H;
    H.n_qubits = spec.n_qubits;
    append_site_fields(H, fields);
    for (std::size_t e = 0; e < spec.edges.size(); ++e) {
        const auto& [i, j] = spec.edges[e];
        if (gx[e])
            H.terms.push_back({two_site(H.n_qubits, i, PauliOp::Z, j, PauliOp::X), gx[e], 1.0});
        if (gy[e])
            H.terms.push_back({two_site(H.n_qubits, i, PauliOp::Z, j, PauliOp::Y), gy[e], 1.0});
    }
    return H;
}

TimeDependentHamiltonian bipartite_rotate(const LatticeSpec& spec,
                                          const TimeDependentHamiltonian& H) {
    spec.validate();
    if (spec.bipartition.empty())
        throw InvalidArgument("bipartite_rotate: spec carries no bipartition");
    if (spec.n_qubits != H.n_qubits)
        throw InvalidArgument("bipartite_rotate: qubit count mismatch");

    TimeDependentHamiltonian out;
    out.n_qubits = H.n_qubits;
    out.terms.reserve(H.terms.size());
    for (const auto& term : H.terms) {
        HamiltonianTerm rotated = term;
        for (int q = 0; q < H.n_qubits; ++q) {
            if (spec.bipartition[q] != 1) continue;
            switch (rotated.string.ops[q]) {
                case PauliOp::Z:
                    rotated.string.ops[q] = PauliOp::X;
                    break;
                case PauliOp::X:
                    rotated.string.ops[q] = PauliOp::Z;
                    rotated.scale = -rotated.scale;
                    break;
                default:
                    break;  // I and Y are invariant under the y-axis rotation
            }
        }
        out.terms.push_back(std::move(rotated));
    }
    return out;
}

std::complex<double> tilde_g(double gx, double gy) { return {0.5 * gx, -0.5 * gy}; }

std::pair<double, double> tilde_g_components(const std::complex<double>& g) {
    return {2.0 * g.real(), -2.0 * g.imag()};
}

std::vector<std::pair<int, int>> frequency_crowding_report(const std::vector<double>& tones,
                                                           double min_spacing) {
    if (min_spacing < 0.0) throw InvalidArgument("frequency_crowding_report: negative spacing");
    std::vector<std::pair<int, int>> collisions;
    for (std::size_t a = 0; a < tones.size(); ++a)
        for (std::size_t b = a + 1; b < tones.size(); ++b)
            if (std::abs(tones[a] - tones[b]) < min_spacing)
                collisions.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return collisions;
}

ArrayTrajectory evolve_array(const TimeDependentHamiltonian& H, const Eigen::VectorXcd& psi0,
                             double t_total, double dt, int n_samples) {
    check_qubit_count(H.n_qubits);
    if (psi0.size() != H.dimension()) throw InvalidArgument("evolve_array: psi0 dimension mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw InvalidArgument("evolve_array: psi0 must be normalized");
    if (!(t_total > 0.0) || !(dt > 0.0)) throw InvalidArgument("evolve_array: need t_total, dt > 0");
    if (n_samples < 2) throw InvalidArgument("evolve_array: n_samples must be >= 2");

    const long steps = std::max<long>(1, static_cast<long>(std::ceil(t_total / dt - 1e-9)));
    const double dt_eff = t_total / static_cast<double>(steps);
    const double sample_spacing = t_total / static_cast<double>(n_samples - 1);

    ArrayTrajectory traj;
    traj.times.reserve(n_samples);
    traj.states.reserve(n_samples);

    Eigen::VectorXcd psi = psi0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    std::vector<double> cached_coeffs;
    bool cache_valid = false;

    auto step_with = [&](const Eigen::VectorXcd& v, double tau) -> Eigen::VectorXcd {
        const Eigen::VectorXcd in_eig = solver.eigenvectors().adjoint() * v;
        Eigen::VectorXcd phased(in_eig.size());
        for (Eigen::Index k = 0; k < in_eig.size(); ++k)
            phased(k) = in_eig(k) * std::polar(1.0, -solver.eigenvalues()(k) * tau);
        return solver.eigenvectors() * phased;
    };

    int j = 0;
    for (long k = 0; k < steps; ++k) {
        const double t_left = k * dt_eff;
        const double t_right = (k + 1) * dt_eff;
        const std::vector<double> coeffs = H.coefficients(t_left + 0.5 * dt_eff);

        bool reuse = cache_valid && coeffs.size() == cached_coeffs.size();
        if (reuse) {
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (std::abs(coeffs[i] - cached_coeffs[i]) > 1e-3) {
                    reuse = false;
                    break;
                }
            }
        }
        if (!reuse) {
            solver.compute(H.evaluate(t_left + 0.5 * dt_eff));
            if (solver.info() != Eigen::Success)
                throw NumericalError("evolve_array: eigendecomposition failed");
            cached_coeffs = coeffs;
            cache_valid = true;
        }

        while (j < n_samples) {
            const double ts = j * sample_spacing;
            if (ts >= t_right - 1e-12 * t_total) break;
            traj.times.push_back(ts);
            traj.states.push_back(step_with(psi, std::max(0.0, ts - t_left)));
            ++j;
        }
        psi = step_with(psi, dt_eff);
    }
    for (; j < n_samples; ++j) {
        traj.times.push_back(t_total);
        traj.states.push_back(psi);
    }
    return traj;
}

}  // namespace floqlab
