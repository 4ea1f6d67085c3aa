// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "twocoin/hilbert.hpp"

namespace twocoin {

enum class GateKind { X, H, S, Sdg, U3, CNOT, Toffoli };

/*
 * One gate. q0 is the target for single-qubit kinds; CNOT is (q0 control,
 * q1 target); Toffoli is (q0, q1 controls, q2 target). Angles are used by
 * U3 only.
 */
struct Gate {
    GateKind kind = GateKind::X;
    int q0 = -1, q1 = -1, q2 = -1;
    double theta = 0.0, phi = 0.0, lambda = 0.0;

    static Gate x(int q) { return {GateKind::X, q, -1, -1, 0, 0, 0}; }
    static Gate h(int q) { return {GateKind::H, q, -1, -1, 0, 0, 0}; }
    static Gate s(int q) { return {GateKind::S, q, -1, -1, 0, 0, 0}; }
    static Gate sdg(int q) { return {GateKind::Sdg, q, -1, -1, 0, 0, 0}; }
    static Gate u3(int q, double theta, double phi, double lambda) {
        return {GateKind::U3, q, -1, -1, theta, phi, lambda};
    }
    static Gate cnot(int control, int target) {
        return {GateKind::CNOT, control, target, -1, 0, 0, 0};
    }
    static Gate toffoli(int control1, int control2, int target) {
        return {GateKind::Toffoli, control1, control2, target, 0, 0, 0};
    }

    int arity() const { return kind == GateKind::Toffoli ? 3 : (kind == GateKind::CNOT ? 2 : 1); }
    bool operator==(const Gate&) const = default;
};

struct RegisterSpan {
    int offset = 0;
    int size = 0;
    bool contains(int q) const { return q >= offset && q < offset + size; }
};

/*
 * Ordered gate list over qubit_count wires. Qubit 0 carries the most
 * significant bit of a basis-state index, so a walk layout maps onto the
 * registers in order: position, coin 1, coin 2, then ancillas (least
 * significant, assumed |0> at entry and exit).
 */
struct Circuit {
    int qubit_count = 0;
    std::vector<Gate> gates;
    RegisterSpan position, coin1, coin2, ancilla;

    Circuit() = default;
    explicit Circuit(int qubits) : qubit_count(qubits) {}

    void append(const Gate& g);

    std::map<std::string, int> gate_counts() const;
    int cnot_count() const;
    // time slots under as-soon-as-possible scheduling, one slot per gate
    int depth() const;
};

/// Directed pairs (control, target) on which a native CNOT exists.
struct CouplingMap {
    int qubit_count = 0;
    std::set<std::pair<int, int>> edges;

    CouplingMap() = default;
    CouplingMap(int qubits, std::set<std::pair<int, int>> e);

    bool native(int control, int target) const {
        return edges.count({control, target}) > 0;
    }
    bool adjacent(int a, int b) const {
        return native(a, b) || native(b, a);
    }

    // forward-directed chain 0 -> 1 -> ... -> n-1
    static CouplingMap line(int qubits);
    // center 0 -> each leaf
    static CouplingMap star(int qubits);
};

// Dense 2^qubit_count matrix; guarded to qubit_count <= 10.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

// The circuit applied to |0...0>.
Eigen::VectorXcd circuit_statevector(const Circuit& circuit);

// Applies the circuit to an arbitrary vector of dimension 2^qubit_count.
Eigen::VectorXcd apply_circuit(const Circuit& circuit, Eigen::VectorXcd v);

/*
 * max |A - e^{i phase} B| over entries, with the phase chosen to maximise
 * Re tr(B^dag A e^{-i phase}) (the Frobenius-optimal alignment). Zero for
 * matrices equal up to a global phase.
 */
double phase_aligned_max_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace twocoin
