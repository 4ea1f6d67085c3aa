// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "twocoin/circuit.hpp"
#include "twocoin/walk.hpp"

namespace twocoin {

/*
 * Lowers a schedule to gates. Needs power-of-two register dimensions
 * (binary position encoding). Per step it emits the coin operator, then
 * the conditional shift:
 *   complete  - position += coin (mod 2^k), one controlled modular adder
 *               per coin bit;
 *   cycle     - coin-controlled increment (coin |0>) and decrement
 *               (coin |1>) mod 2^k.
 * Multi-controlled X cascades borrow the ancilla span and return it to
 * |0>. Recovery operators are emitted after the last step, so the result
 * matches unitary_of(schedule) on the walk registers up to global phase.
 */
Circuit compile_protocol(const Schedule& schedule);

// |0> -> the first column of the u3 matrix
Circuit prepare_payload_single(double theta, double phi, double lambda);
// |00> -> (|00> + |11>)/sqrt(2)
Circuit prepare_payload_bell();
// |000> -> (|000> + |111>)/sqrt(2)
Circuit prepare_payload_ghz();
// |000> -> (|001> + |010> + |100>)/sqrt(3)
Circuit prepare_payload_w();

}  // namespace twocoin
