// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "twocoin/circuit.hpp"

namespace twocoin {

/*
 * Rewrites every Toffoli into the standard 6-CNOT network with H and
 * pi/4-phase rotations (expressed as u3 gates). Exact, no global phase.
 */
Circuit decompose_toffoli(const Circuit& circuit);

/*
 * Rewrites every CNOT so the output uses native (control, target) pairs
 * only. Wrong-direction CNOTs are conjugated with Hadamards; non-adjacent
 * ones are expanded along a shortest undirected path (ties broken toward
 * the lexicographically smallest qubit sequence) with the 4-CNOT bridging
 * identity, recursively. Input must be Toffoli-free. Throws when the map
 * cannot connect a CNOT's endpoints. The output is widened to the coupling
 * map's qubit count.
 */
Circuit route(const Circuit& circuit, const CouplingMap& coupling);

}  // namespace twocoin
