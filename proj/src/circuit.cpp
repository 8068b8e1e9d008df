#include "qfi/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qfi {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

struct KindInfo {
    GateKind kind;
    std::string_view name;
    int arity;
    int params;
};

constexpr KindInfo kKinds[kNumGateKinds] = {
    {GateKind::I, "i", 1, 0},      {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},      {GateKind::Z, "z", 1, 0},
    {GateKind::H, "h", 1, 0},      {GateKind::S, "s", 1, 0},
    {GateKind::Sdg, "sdg", 1, 0},  {GateKind::T, "t", 1, 0},
    {GateKind::Tdg, "tdg", 1, 0},  {GateKind::Rx, "rx", 1, 1},
    {GateKind::Ry, "ry", 1, 1},    {GateKind::Rz, "rz", 1, 1},
    {GateKind::Phase, "phase", 1, 1}, {GateKind::Cx, "cx", 2, 0},
    {GateKind::Cz, "cz", 2, 0},    {GateKind::Cy, "cy", 2, 0},
};

const KindInfo& info(GateKind k) { return kKinds[static_cast<int>(k)]; }

}  // namespace

int gate_arity(GateKind k) { return info(k).arity; }
int gate_param_count(GateKind k) { return info(k).params; }
std::string_view gate_name(GateKind k) { return info(k).name; }

GateKind gate_kind_from_name(std::string_view name) {
    for (const auto& ki : kKinds) {
        if (ki.name == name) return ki.kind;
    }
    throw std::invalid_argument("unknown gate kind: " + std::string(name));
}

Gate Gate::one(GateKind k, int q, double angle) {
    if (gate_arity(k) != 1) throw std::invalid_argument("gate kind needs two qubits");
    Gate g;
    g.kind = k;
    g.q0 = q;
    g.q1 = -1;
    g.angle = gate_param_count(k) == 1 ? angle : 0.0;
    return g;
}

Gate Gate::two(GateKind k, int control, int target) {
    if (gate_arity(k) != 2) throw std::invalid_argument("gate kind takes one qubit");
    Gate g;
    g.kind = k;
    g.q0 = control;
    g.q1 = target;
    return g;
}

void validate_circuit(const Circuit& c, int qubit_cap, int max_gates) {
    if (c.n_qubits < 1 || c.n_qubits > qubit_cap)
        throw std::invalid_argument("n_qubits out of range");
    if (static_cast<int>(c.gates.size()) > max_gates)
        throw std::invalid_argument("gate count exceeds max_gates");
    for (const Gate& g : c.gates) {
        if (g.q0 < 0 || g.q0 >= c.n_qubits)
            throw std::invalid_argument("gate qubit index out of range");
        if (g.arity() == 2) {
            if (g.q1 < 0 || g.q1 >= c.n_qubits)
                throw std::invalid_argument("gate qubit index out of range");
            if (g.q1 == g.q0)
                throw std::invalid_argument("two-qubit gate needs distinct qubits");
        }
    }
}

GateMatrix gate_matrix(const Gate& g) {
    using namespace std::complex_literals;
    GateMatrix u;
    const double a = g.angle;
    switch (g.kind) {
        case GateKind::I:
            u.m = {1, 0, 0, 1};
            break;
        case GateKind::X:
            u.m = {0, 1, 1, 0};
            break;
        case GateKind::Y:
            u.m = {0, -1i, 1i, 0};
            break;
        case GateKind::Z:
            u.m = {1, 0, 0, -1};
            break;
        case GateKind::H:
            u.m = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
            break;
        case GateKind::S:
            u.m = {1, 0, 0, 1i};
            break;
        case GateKind::Sdg:
            u.m = {1, 0, 0, -1i};
            break;
        case GateKind::T:
            u.m = {1, 0, 0, std::polar(1.0, M_PI / 4)};
            break;
        case GateKind::Tdg:
            u.m = {1, 0, 0, std::polar(1.0, -M_PI / 4)};
            break;
        case GateKind::Rx:
            // exp(-i a X / 2)
            u.m = {std::cos(a / 2), -1i * std::sin(a / 2), -1i * std::sin(a / 2),
                   std::cos(a / 2)};
            break;
        case GateKind::Ry:
            u.m = {std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2)};
            break;
        case GateKind::Rz:
            u.m = {std::polar(1.0, -a / 2), 0, 0, std::polar(1.0, a / 2)};
            break;
        case GateKind::Phase:
            u.m = {1, 0, 0, std::polar(1.0, a)};
            break;
        case GateKind::Cx:
            u.dim = 4;
            u.m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
            break;
        case GateKind::Cz:
            u.dim = 4;
            u.m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
            break;
        case GateKind::Cy:
            u.dim = 4;
            u.m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1i, 0, 0, 1i, 0};
            break;
    }
    return u;
}

int circuit_depth(const Circuit& c) {
    std::vector<int> last(static_cast<std::size_t>(c.n_qubits), -1);
    int depth = 0;
    for (const Gate& g : c.gates) {
        int layer = last[static_cast<std::size_t>(g.q0)] + 1;
        if (g.arity() == 2) layer = std::max(layer, last[static_cast<std::size_t>(g.q1)] + 1);
        last[static_cast<std::size_t>(g.q0)] = layer;
        if (g.arity() == 2) last[static_cast<std::size_t>(g.q1)] = layer;
        depth = std::max(depth, layer + 1);
    }
    return depth;
}

std::string circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["n"] = c.n_qubits;
    j["gates"] = nlohmann::json::array();
    for (const Gate& g : c.gates) {
        nlohmann::json jg;
        jg["k"] = std::string(gate_name(g.kind));
        jg["q"] = g.arity() == 2 ? nlohmann::json::array({g.q0, g.q1})
                                 : nlohmann::json::array({g.q0});
        jg["p"] = g.parameterized() ? nlohmann::json::array({g.angle})
                                    : nlohmann::json::array();
        j["gates"].push_back(std::move(jg));
    }
    return j.dump();
}

Circuit circuit_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Circuit c;
    c.n_qubits = j.at("n").get<int>();
    for (const auto& jg : j.at("gates")) {
        const GateKind kind = gate_kind_from_name(jg.at("k").get<std::string>());
        const auto& q = jg.at("q");
        const auto& p = jg.at("p");
        if (static_cast<int>(q.size()) != gate_arity(kind))
            throw std::invalid_argument("gate qubit list has wrong length");
        if (static_cast<int>(p.size()) != gate_param_count(kind))
            throw std::invalid_argument("gate parameter list has wrong length");
        Gate g;
        if (gate_arity(kind) == 2) {
            g = Gate::two(kind, q[0].get<int>(), q[1].get<int>());
        } else {
            g = Gate::one(kind, q[0].get<int>(), p.empty() ? 0.0 : p[0].get<double>());
        }
        c.gates.push_back(g);
    }
    validate_circuit(c, c.n_qubits, static_cast<int>(c.gates.size()));
    return c;
}

}  // namespace qfi
