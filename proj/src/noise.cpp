#include "qfi/noise.hpp"

#include <stdexcept>

#include "detail.hpp"

namespace qfi {

namespace {

const GateMatrix& pauli_matrix(int p) {
    using namespace std::complex_literals;
    static const GateMatrix kPaulis[4] = {
        {2, {1, 0, 0, 1}},
        {2, {0, 1, 1, 0}},
        {2, {0, -1i, 1i, 0}},
        {2, {1, 0, 0, -1}},
    };
    return kPaulis[p];
}

void check_probability(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing probability outside [0,1]");
}

void scale_add(std::vector<cx>& acc, const std::vector<cx>& term, double w) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * term[i];
}

}  // namespace

DensityMatrix depolarize(const DensityMatrix& rho, int qubit, double p) {
    check_probability(p);
    if (qubit < 0 || qubit >= rho.n_qubits) throw std::invalid_argument("qubit index out of range");
    DensityMatrix out = rho;
    for (auto& v : out.matrix) v *= (1.0 - p);
    if (p == 0.0) return out;
    for (int pa = 1; pa < 4; ++pa) {
        DensityMatrix term = rho;
        detail::conjugate_matrix(term, pauli_matrix(pa), qubit, -1);
        scale_add(out.matrix, term.matrix, p / 3.0);
    }
    return out;
}

DensityMatrix depolarize(const DensityMatrix& rho, int qubit_a, int qubit_b, double p) {
    check_probability(p);
    if (qubit_a < 0 || qubit_a >= rho.n_qubits || qubit_b < 0 || qubit_b >= rho.n_qubits)
        throw std::invalid_argument("qubit index out of range");
    if (qubit_a == qubit_b) throw std::invalid_argument("depolarize needs distinct qubits");
    DensityMatrix out = rho;
    for (auto& v : out.matrix) v *= (1.0 - p);
    if (p == 0.0) return out;
    for (int pa = 0; pa < 4; ++pa) {
        for (int pb = 0; pb < 4; ++pb) {
            if (pa == 0 && pb == 0) continue;
            DensityMatrix term = rho;
            if (pa != 0) detail::conjugate_matrix(term, pauli_matrix(pa), qubit_a, -1);
            if (pb != 0) detail::conjugate_matrix(term, pauli_matrix(pb), qubit_b, -1);
            scale_add(out.matrix, term.matrix, p / 15.0);
        }
    }
    return out;
}

DensityMatrix simulate_noisy(const Circuit& c, const NoiseModel& nm, int qubit_cap) {
    validate_circuit(c, qubit_cap, static_cast<int>(c.gates.size()));
    check_probability(nm.p1);
    check_probability(nm.p2);
    DensityMatrix rho = zero_density(c.n_qubits);
    for (const Gate& g : c.gates) {
        conjugate_gate_inplace(rho, g);
        rho = g.arity() == 2 ? depolarize(rho, g.q0, g.q1, nm.p2)
                             : depolarize(rho, g.q0, nm.p1);
    }
    return rho;
}

double robustness(const Circuit& c, const NoiseModel& nm, const TargetState& tau,
                  int qubit_cap) {
    const double f_ideal = fidelity_pure(simulate(c, qubit_cap), tau);
    const double f_noisy = fidelity_mixed(simulate_noisy(c, nm, qubit_cap), tau);
    if (f_ideal >= nm.epsilon) return std::min(1.0, f_noisy / f_ideal);
    return std::min(1.0, f_noisy);
}

}  // namespace qfi
