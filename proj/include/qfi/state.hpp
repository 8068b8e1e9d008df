#pragma once

#include <vector>

#include "qfi/circuit.hpp"

namespace qfi {

// Qubit ordering is little-endian throughout: qubit 0 is the least
// significant bit of the basis index.

struct StateVector {
    int n_qubits = 1;
    std::vector<cx> amplitudes;  // length 2^n_qubits
};

struct DensityMatrix {
    int n_qubits = 1;
    std::vector<cx> matrix;  // row-major, 2^n x 2^n

    cx at(int r, int c) const {
        return matrix[static_cast<std::size_t>(r) * (1u << n_qubits) + static_cast<std::size_t>(c)];
    }
};

// Pure reference state: Bell |Phi+> for n=2, GHZ_n for n>=3.
struct TargetState {
    int n_qubits = 2;
    std::vector<cx> amplitudes;
};

StateVector zero_state(int n_qubits);
DensityMatrix zero_density(int n_qubits);
DensityMatrix density_from_state(const StateVector& psi);  // |psi><psi|

double state_norm(const StateVector& psi);

void apply_gate_inplace(StateVector& psi, const Gate& g);
StateVector apply_gate(StateVector psi, const Gate& g);

// rho -> U rho U^dagger for one gate.
void conjugate_gate_inplace(DensityMatrix& rho, const Gate& g);

// Applies c.gates in order to |0...0>. Throws std::invalid_argument when
// n_qubits exceeds the cap.
StateVector simulate(const Circuit& c, int qubit_cap = kDefaultPureQubitCap);

TargetState target_state(int n_qubits);  // throws for n < 2

double fidelity_pure(const StateVector& psi, const TargetState& tau);   // |<tau|psi>|^2
double fidelity_mixed(const DensityMatrix& rho, const TargetState& tau);  // <tau|rho|tau>

// Partial trace down to the single qubit `qubit` (a 2x2 density matrix).
DensityMatrix reduced_qubit(const StateVector& psi, int qubit);
DensityMatrix reduced_qubit(const DensityMatrix& rho, int qubit);

// Base-2 von Neumann entropy of a 2x2 density matrix, via the closed-form
// eigenvalues lambda = (1 +- sqrt((r00-r11)^2 + 4|r01|^2)) / 2.
double von_neumann_entropy(const DensityMatrix& rho_qubit);

// Mean single-qubit entropy (1/n) sum_i Sv(rho_i).
double avg_entropy(const StateVector& psi);
double avg_entropy(const DensityMatrix& rho);

}  // namespace qfi
