// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "twocoin/circuit.hpp"

namespace twocoin {

struct QasmParseError : std::runtime_error {
    int line;
    QasmParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

/*
 * Emits OpenQASM 2.0 with the gate subset {u3, x, h, s, sdg, cx, ccx}.
 * Angles are printed in shortest round-trip form so that re-parsing yields
 * bit-identical doubles. `measure_qubits`, when non-empty, appends a creg
 * and one measure line per listed qubit.
 */
std::string export_gatelist(const Circuit& circuit,
                            const std::vector<int>& measure_qubits = {});

/*
 * Parses the same subset back (plus `measure`, which is accepted and
 * dropped). Angle expressions may use numbers, pi, parentheses and
 * + - * / with unary minus. Register-map comments are not recovered.
 */
Circuit parse_gatelist(const std::string& text);

}  // namespace twocoin
