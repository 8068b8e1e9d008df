#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qfi {

using cx = std::complex<double>;

// The 16-gate set circuits are built from. Rx/Ry/Rz/Phase carry one angle,
// Cx/Cz/Cy act on two distinct qubits, everything else is a fixed
// single-qubit gate.
enum class GateKind : std::uint8_t {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Phase,
    Cx,
    Cz,
    Cy,
};

inline constexpr int kNumGateKinds = 16;

int gate_arity(GateKind k);        // 1 or 2 qubits
int gate_param_count(GateKind k);  // 0 or 1 angles
std::string_view gate_name(GateKind k);
GateKind gate_kind_from_name(std::string_view name);  // throws std::invalid_argument

struct Gate {
    GateKind kind = GateKind::I;
    int q0 = 0;
    int q1 = -1;         // second qubit, -1 for single-qubit kinds
    double angle = 0.0;  // rotation/phase angle in radians

    static Gate one(GateKind k, int q, double angle = 0.0);
    static Gate two(GateKind k, int control, int target);

    int arity() const { return gate_arity(kind); }
    bool parameterized() const { return gate_param_count(kind) == 1; }
};

struct Circuit {
    int n_qubits = 1;
    std::vector<Gate> gates;
};

inline constexpr int kDefaultMaxGates = 50;
inline constexpr int kDefaultPureQubitCap = 8;
inline constexpr int kDefaultDensityQubitCap = 6;

// Checks qubit ranges, two-qubit distinctness and the gate-count cap.
// Throws std::invalid_argument on the first violation.
void validate_circuit(const Circuit& c, int qubit_cap = kDefaultPureQubitCap,
                      int max_gates = kDefaultMaxGates);

// Unitary of one gate, row-major. dim is 2 or 4; for two-qubit gates the
// local basis index is 2*bit(q0) + bit(q1), i.e. the first listed qubit
// (the control) is the high bit of the 4-dim index.
struct GateMatrix {
    int dim = 2;
    std::array<cx, 16> m{};

    cx at(int r, int c) const { return m[static_cast<std::size_t>(r * dim + c)]; }
};

GateMatrix gate_matrix(const Gate& g);

// Layers after greedy left-alignment: a gate lands one layer past the last
// gate touching any of its qubits. Empty circuit has depth 0.
int circuit_depth(const Circuit& c);

// One JSON object {"n": int, "gates": [{"k": "h", "q": [0], "p": []}, ...]}.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

}  // namespace qfi
