#include "qfi/state.hpp"

#include <cmath>
#include <stdexcept>

#include "detail.hpp"

namespace qfi {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

void check_qubit(int q, int n_qubits) {
    if (q < 0 || q >= n_qubits) throw std::out_of_range("qubit index out of range");
}

GateMatrix conjugated(const GateMatrix& u) {
    GateMatrix c = u;
    for (auto& v : c.m) v = std::conj(v);
    return c;
}

}  // namespace

namespace detail {

// U on qubit q of a 2^total_qubits complex array. A density matrix in
// row-major order is addressed as a 2n-qubit array whose high n bits are
// the row index, so the same kernel serves both representations.
void kernel_1q(cx* data, int total_qubits, int q, const GateMatrix& u) {
    const std::size_t size = std::size_t{1} << total_qubits;
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < size; ++i) {
        if (i & bit) continue;
        cx& a0 = data[i];
        cx& a1 = data[i | bit];
        const cx t0 = u.m[0] * a0 + u.m[1] * a1;
        const cx t1 = u.m[2] * a0 + u.m[3] * a1;
        a0 = t0;
        a1 = t1;
    }
}

// Two-qubit version; qa carries the high bit of the gate's local index.
void kernel_2q(cx* data, int total_qubits, int qa, int qb, const GateMatrix& u) {
    const std::size_t size = std::size_t{1} << total_qubits;
    const std::size_t ba = std::size_t{1} << qa;
    const std::size_t bb = std::size_t{1} << qb;
    for (std::size_t i = 0; i < size; ++i) {
        if ((i & ba) || (i & bb)) continue;
        cx* amp[4] = {&data[i], &data[i | bb], &data[i | ba], &data[i | ba | bb]};
        cx out[4];
        for (int r = 0; r < 4; ++r) {
            out[r] = u.m[static_cast<std::size_t>(4 * r)] * *amp[0] +
                     u.m[static_cast<std::size_t>(4 * r + 1)] * *amp[1] +
                     u.m[static_cast<std::size_t>(4 * r + 2)] * *amp[2] +
                     u.m[static_cast<std::size_t>(4 * r + 3)] * *amp[3];
        }
        for (int r = 0; r < 4; ++r) *amp[r] = out[r];
    }
}

// rho -> U rho U^dagger. Row bits live at offset n, so the left factor acts
// on q+n and the right factor acts on q as conj(U).
void conjugate_matrix(DensityMatrix& rho, const GateMatrix& u, int q0, int q1) {
    const int n = rho.n_qubits;
    const GateMatrix uc = conjugated(u);
    if (u.dim == 4) {
        kernel_2q(rho.matrix.data(), 2 * n, q0 + n, q1 + n, u);
        kernel_2q(rho.matrix.data(), 2 * n, q0, q1, uc);
    } else {
        kernel_1q(rho.matrix.data(), 2 * n, q0 + n, u);
        kernel_1q(rho.matrix.data(), 2 * n, q0, uc);
    }
}

}  // namespace detail

StateVector zero_state(int n_qubits) {
    StateVector psi;
    psi.n_qubits = n_qubits;
    psi.amplitudes.assign(dim_of(n_qubits), cx{0.0, 0.0});
    psi.amplitudes[0] = 1.0;
    return psi;
}

DensityMatrix zero_density(int n_qubits) {
    DensityMatrix rho;
    rho.n_qubits = n_qubits;
    rho.matrix.assign(dim_of(n_qubits) * dim_of(n_qubits), cx{0.0, 0.0});
    rho.matrix[0] = 1.0;
    return rho;
}

DensityMatrix density_from_state(const StateVector& psi) {
    DensityMatrix rho;
    rho.n_qubits = psi.n_qubits;
    const std::size_t dim = dim_of(psi.n_qubits);
    rho.matrix.resize(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            rho.matrix[r * dim + c] = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
    return rho;
}

double state_norm(const StateVector& psi) {
    double s = 0.0;
    for (const cx& a : psi.amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

void apply_gate_inplace(StateVector& psi, const Gate& g) {
    check_qubit(g.q0, psi.n_qubits);
    const GateMatrix u = gate_matrix(g);
    if (g.arity() == 2) {
        check_qubit(g.q1, psi.n_qubits);
        if (g.q0 == g.q1) throw std::invalid_argument("two-qubit gate needs distinct qubits");
        detail::kernel_2q(psi.amplitudes.data(), psi.n_qubits, g.q0, g.q1, u);
    } else {
        detail::kernel_1q(psi.amplitudes.data(), psi.n_qubits, g.q0, u);
    }
}

StateVector apply_gate(StateVector psi, const Gate& g) {
    apply_gate_inplace(psi, g);
    return psi;
}

void conjugate_gate_inplace(DensityMatrix& rho, const Gate& g) {
    check_qubit(g.q0, rho.n_qubits);
    const GateMatrix u = gate_matrix(g);
    if (g.arity() == 2) {
        check_qubit(g.q1, rho.n_qubits);
        if (g.q0 == g.q1) throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    detail::conjugate_matrix(rho, u, g.q0, g.q1);
}

StateVector simulate(const Circuit& c, int qubit_cap) {
    validate_circuit(c, qubit_cap, static_cast<int>(c.gates.size()));
    StateVector psi = zero_state(c.n_qubits);
    for (const Gate& g : c.gates) apply_gate_inplace(psi, g);
    return psi;
}

TargetState target_state(int n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("target state needs at least 2 qubits");
    TargetState tau;
    tau.n_qubits = n_qubits;
    tau.amplitudes.assign(dim_of(n_qubits), cx{0.0, 0.0});
    tau.amplitudes.front() = kInvSqrt2;
    tau.amplitudes.back() = kInvSqrt2;
    return tau;
}

double fidelity_pure(const StateVector& psi, const TargetState& tau) {
    if (psi.n_qubits != tau.n_qubits) throw std::invalid_argument("dimension mismatch");
    cx overlap{0.0, 0.0};
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
        overlap += std::conj(tau.amplitudes[i]) * psi.amplitudes[i];
    const double f = std::norm(overlap);
    return std::min(1.0, std::max(0.0, f));
}

double fidelity_mixed(const DensityMatrix& rho, const TargetState& tau) {
    if (rho.n_qubits != tau.n_qubits) throw std::invalid_argument("dimension mismatch");
    const std::size_t dim = dim_of(rho.n_qubits);
    cx v{0.0, 0.0};
    for (std::size_t r = 0; r < dim; ++r) {
        cx row{0.0, 0.0};
        for (std::size_t c = 0; c < dim; ++c) row += rho.matrix[r * dim + c] * tau.amplitudes[c];
        v += std::conj(tau.amplitudes[r]) * row;
    }
    return std::min(1.0, std::max(0.0, v.real()));
}

DensityMatrix reduced_qubit(const StateVector& psi, int qubit) {
    if (qubit < 0 || qubit >= psi.n_qubits) throw std::invalid_argument("qubit index out of range");
    const std::size_t dim = dim_of(psi.n_qubits);
    const std::size_t bit = std::size_t{1} << qubit;
    cx r00{0, 0}, r01{0, 0}, r11{0, 0};
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const cx a0 = psi.amplitudes[i];
        const cx a1 = psi.amplitudes[i | bit];
        r00 += a0 * std::conj(a0);
        r01 += a0 * std::conj(a1);
        r11 += a1 * std::conj(a1);
    }
    DensityMatrix rho;
    rho.n_qubits = 1;
    rho.matrix = {r00, r01, std::conj(r01), r11};
    return rho;
}

DensityMatrix reduced_qubit(const DensityMatrix& rho, int qubit) {
    if (qubit < 0 || qubit >= rho.n_qubits) throw std::invalid_argument("qubit index out of range");
    const std::size_t dim = dim_of(rho.n_qubits);
    const std::size_t bit = std::size_t{1} << qubit;
    cx r00{0, 0}, r01{0, 0}, r11{0, 0};
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        r00 += rho.matrix[i * dim + i];
        r01 += rho.matrix[i * dim + (i | bit)];
        r11 += rho.matrix[(i | bit) * dim + (i | bit)];
    }
    DensityMatrix out;
    out.n_qubits = 1;
    out.matrix = {r00, r01, std::conj(r01), r11};
    return out;
}

double von_neumann_entropy(const DensityMatrix& rho_qubit) {
    const double tr = rho_qubit.matrix[0].real() + rho_qubit.matrix[3].real();
    const double diff = rho_qubit.matrix[0].real() - rho_qubit.matrix[3].real();
    const double radius = std::sqrt(diff * diff + 4.0 * std::norm(rho_qubit.matrix[1]));
    double lam0 = std::min(1.0, std::max(0.0, 0.5 * (tr + radius)));
    double lam1 = std::min(1.0, std::max(0.0, 0.5 * (tr - radius)));
    double s = 0.0;
    if (lam0 > 0.0) s -= lam0 * std::log2(lam0);
    if (lam1 > 0.0) s -= lam1 * std::log2(lam1);
    return std::min(1.0, std::max(0.0, s));
}

double avg_entropy(const StateVector& psi) {
    double s = 0.0;
    for (int q = 0; q < psi.n_qubits; ++q) s += von_neumann_entropy(reduced_qubit(psi, q));
    return s / psi.n_qubits;
}

double avg_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (int q = 0; q < rho.n_qubits; ++q) s += von_neumann_entropy(reduced_qubit(rho, q));
    return s / rho.n_qubits;
}

}  // namespace qfi
