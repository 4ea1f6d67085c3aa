// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include "twocoin/circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace twocoin {

namespace {

void check_gate(const Gate& g, int qubit_count) {
    const int qs[3] = {g.q0, g.q1, g.q2};
    const int n = g.arity();
    for (int i = 0; i < n; ++i) {
        if (qs[i] < 0 || qs[i] >= qubit_count) {
            throw std::invalid_argument("Gate references a qubit outside the circuit");
        }
        for (int j = i + 1; j < n; ++j) {
            if (qs[i] == qs[j]) {
                throw std::invalid_argument("Gate qubit indices must be distinct");
            }
        }
    }
}

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "x";
        case GateKind::H: return "h";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::U3: return "u3";
        case GateKind::CNOT: return "cx";
        case GateKind::Toffoli: return "ccx";
    }
    return "?";
}

}  // namespace

void Circuit::append(const Gate& g) {
    check_gate(g, qubit_count);
    gates.push_back(g);
}

std::map<std::string, int> Circuit::gate_counts() const {
    std::map<std::string, int> counts;
    for (const auto& g : gates) ++counts[kind_name(g.kind)];
    return counts;
}

int Circuit::cnot_count() const {
    int n = 0;
    for (const auto& g : gates) n += (g.kind == GateKind::CNOT) ? 1 : 0;
    return n;
}

int Circuit::depth() const {
    std::vector<int> busy_until(qubit_count, 0);
    int depth = 0;
    for (const auto& g : gates) {
        const int qs[3] = {g.q0, g.q1, g.q2};
        int slot = 0;
        for (int i = 0; i < g.arity(); ++i) slot = std::max(slot, busy_until[qs[i]]);
        ++slot;
        for (int i = 0; i < g.arity(); ++i) busy_until[qs[i]] = slot;
        depth = std::max(depth, slot);
    }
    return depth;
}

CouplingMap::CouplingMap(int qubits, std::set<std::pair<int, int>> e)
    : qubit_count(qubits), edges(std::move(e)) {
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= qubits || b < 0 || b >= qubits) {
            throw std::invalid_argument("CouplingMap: edge references an invalid qubit");
        }
        if (a == b) throw std::invalid_argument("CouplingMap: self-edges are not allowed");
    }
}

CouplingMap CouplingMap::line(int qubits) {
    std::set<std::pair<int, int>> e;
    for (int i = 0; i + 1 < qubits; ++i) e.insert({i, i + 1});
    return CouplingMap(qubits, std::move(e));
}

CouplingMap CouplingMap::star(int qubits) {
    std::set<std::pair<int, int>> e;
    for (int i = 1; i < qubits; ++i) e.insert({0, i});
    return CouplingMap(qubits, std::move(e));
}

namespace {

// Qubit 0 is the most significant bit of the basis index.
inline int bit_mask(int qubit, int qubit_count) {
    return 1 << (qubit_count - 1 - qubit);
}

void apply_single(Eigen::VectorXcd& v, int qubit, int qubit_count,
                  const Eigen::Matrix2cd& m) {
    const int mask = bit_mask(qubit, qubit_count);
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
        if (i & mask) continue;
        const cx a = v[i], b = v[i | mask];
        v[i] = m(0, 0) * a + m(0, 1) * b;
        v[i | mask] = m(1, 0) * a + m(1, 1) * b;
    }
}

Eigen::Matrix2cd single_matrix(const Gate& g) {
    Eigen::Matrix2cd m;
    switch (g.kind) {
        case GateKind::X:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::H:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case GateKind::S:
            m << 1, 0, 0, cx{0, 1};
            return m;
        case GateKind::Sdg:
            m << 1, 0, 0, cx{0, -1};
            return m;
        case GateKind::U3: {
            const double c = std::cos(g.theta / 2.0), s = std::sin(g.theta / 2.0);
            m(0, 0) = c;
            m(0, 1) = -std::exp(cx{0.0, g.lambda}) * s;
            m(1, 0) = std::exp(cx{0.0, g.phi}) * s;
            m(1, 1) = std::exp(cx{0.0, g.lambda + g.phi}) * c;
            return m;
        }
        default:
            throw std::logic_error("single_matrix: not a single-qubit gate");
    }
}

}  // namespace

Eigen::VectorXcd apply_circuit(const Circuit& circuit, Eigen::VectorXcd v) {
    const int q = circuit.qubit_count;
    if (v.size() != (Eigen::Index(1) << q)) {
        throw std::invalid_argument("apply_circuit: vector dimension mismatch");
    }
    const int n = static_cast<int>(v.size());
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::CNOT: {
                const int cm = bit_mask(g.q0, q), tm = bit_mask(g.q1, q);
                for (int i = 0; i < n; ++i) {
                    if ((i & cm) && !(i & tm)) std::swap(v[i], v[i | tm]);
                }
                break;
            }
            case GateKind::Toffoli: {
                const int c1 = bit_mask(g.q0, q), c2 = bit_mask(g.q1, q);
                const int tm = bit_mask(g.q2, q);
                for (int i = 0; i < n; ++i) {
                    if ((i & c1) && (i & c2) && !(i & tm)) std::swap(v[i], v[i | tm]);
                }
                break;
            }
            default:
                apply_single(v, g.q0, q, single_matrix(g));
        }
    }
    return v;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
    if (circuit.qubit_count < 1 || circuit.qubit_count > 10) {
        throw std::invalid_argument("circuit_unitary: qubit_count must be in [1, 10]");
    }
    const int n = 1 << circuit.qubit_count;
    Eigen::MatrixXcd u(n, n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v[k] = 1.0;
        u.col(k) = apply_circuit(circuit, std::move(v));
    }
    return u;
}

Eigen::VectorXcd circuit_statevector(const Circuit& circuit) {
    const Eigen::Index n = Eigen::Index(1) << circuit.qubit_count;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v[0] = 1.0;
    return apply_circuit(circuit, std::move(v));
}

double phase_aligned_max_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("phase_aligned_max_distance: shape mismatch");
    }
    const cx inner = (b.adjoint() * a).trace();
    cx phase{1.0, 0.0};
    if (std::abs(inner) > 1e-15) phase = inner / std::abs(inner);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace twocoin
