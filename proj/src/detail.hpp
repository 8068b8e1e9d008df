#pragma once

#include "qfi/state.hpp"

// Shared low-level kernels, defined in state.cpp.
namespace qfi::detail {

void kernel_1q(cx* data, int total_qubits, int q, const GateMatrix& u);
void kernel_2q(cx* data, int total_qubits, int qa, int qb, const GateMatrix& u);
void conjugate_matrix(DensityMatrix& rho, const GateMatrix& u, int q0, int q1);

}  // namespace qfi::detail
