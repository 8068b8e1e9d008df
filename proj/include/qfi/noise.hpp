#pragma once

#include "qfi/state.hpp"

namespace qfi {

// Gate-dependent depolarizing noise: p1 after each single-qubit gate,
// p2 after each two-qubit gate, applied on the gate's own qubits.
struct NoiseModel {
    double p1 = 0.001;
    double p2 = 0.01;
    double epsilon = 1e-9;  // guard for the robustness ratio
};

// rho -> (1-p) rho + (p/3) sum_{P in {X,Y,Z}} P rho P on one qubit.
DensityMatrix depolarize(const DensityMatrix& rho, int qubit, double p);

// Two-qubit form with the 15 non-identity Pauli pairs at weight p/15 each.
DensityMatrix depolarize(const DensityMatrix& rho, int qubit_a, int qubit_b, double p);

// |0..0><0..0| evolved gate by gate, each unitary followed by the
// depolarizing channel on its qubits. Throws std::invalid_argument when
// n_qubits exceeds the cap.
DensityMatrix simulate_noisy(const Circuit& c, const NoiseModel& nm,
                             int qubit_cap = kDefaultDensityQubitCap);

// R(C) = min(1, F_noisy / F_ideal) when F_ideal >= epsilon, else
// min(1, F_noisy).
double robustness(const Circuit& c, const NoiseModel& nm, const TargetState& tau,
                  int qubit_cap = kDefaultDensityQubitCap);

}  // namespace qfi
