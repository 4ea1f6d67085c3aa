// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include "twocoin/transpile.hpp"

#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace twocoin {

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 4.0;

Gate t_gate(int q) { return Gate::u3(q, 0.0, 0.0, kQuarterTurn); }
Gate tdg_gate(int q) { return Gate::u3(q, 0.0, 0.0, -kQuarterTurn); }

}  // namespace

Circuit decompose_toffoli(const Circuit& circuit) {
    Circuit out = circuit;
    out.gates.clear();
    for (const auto& g : circuit.gates) {
        if (g.kind != GateKind::Toffoli) {
            out.append(g);
            continue;
        }
        const int a = g.q0, b = g.q1, t = g.q2;
        out.append(Gate::h(t));
        out.append(Gate::cnot(b, t));
        out.append(tdg_gate(t));
        out.append(Gate::cnot(a, t));
        out.append(t_gate(t));
        out.append(Gate::cnot(b, t));
        out.append(tdg_gate(t));
        out.append(Gate::cnot(a, t));
        out.append(t_gate(b));
        out.append(t_gate(t));
        out.append(Gate::h(t));
        out.append(Gate::cnot(a, b));
        out.append(t_gate(a));
        out.append(tdg_gate(b));
        out.append(Gate::cnot(a, b));
    }
    return out;
}

namespace {

// Shortest undirected path from `from` to `to`; among equally short paths
// the lexicographically smallest qubit sequence. Empty when unreachable.
std::vector<int> shortest_path(const CouplingMap& map, int from, int to) {
    const int n = map.qubit_count;
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : map.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[to] = 0;
    q.push(to);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    if (dist[from] < 0) return {};
    std::vector<int> path{from};
    int cur = from;
    while (cur != to) {
        int next = -1;
        for (int w : adj[cur]) {
            if (dist[w] == dist[cur] - 1 && (next < 0 || w < next)) next = w;
        }
        path.push_back(next);
        cur = next;
    }
    return path;
}

void route_cnot(Circuit& out, const CouplingMap& map, int control, int target) {
    if (map.native(control, target)) {
        out.append(Gate::cnot(control, target));
        return;
    }
    if (map.native(target, control)) {
        out.append(Gate::h(control));
        out.append(Gate::h(target));
        out.append(Gate::cnot(target, control));
        out.append(Gate::h(control));
        out.append(Gate::h(target));
        return;
    }
    const auto path = shortest_path(map, control, target);
    if (path.size() < 2) {
        throw std::invalid_argument(
            "route: coupling map does not connect qubits " + std::to_string(control) +
            " and " + std::to_string(target));
    }
    const int hop = path[1];
    route_cnot(out, map, control, hop);
    route_cnot(out, map, hop, target);
    route_cnot(out, map, control, hop);
    route_cnot(out, map, hop, target);
}

}  // namespace

Circuit route(const Circuit& circuit, const CouplingMap& coupling) {
    if (coupling.qubit_count < circuit.qubit_count) {
        throw std::invalid_argument("route: coupling map has fewer qubits than the circuit");
    }
    Circuit out = circuit;
    out.qubit_count = coupling.qubit_count;
    out.gates.clear();
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::Toffoli:
                throw std::invalid_argument("route: decompose Toffoli gates first");
            case GateKind::CNOT:
                route_cnot(out, coupling, g.q0, g.q1);
                break;
            default:
                out.append(g);
        }
    }
    return out;
}

}  // namespace twocoin
