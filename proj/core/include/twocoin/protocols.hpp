// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "twocoin/walk.hpp"

namespace twocoin {

/// Outcome of running a transfer schedule on one payload.
struct TransferReport {
    std::string schedule_label;
    int target = 0;
    std::vector<double> position_distribution;
    std::vector<double> coin1_distribution;
    std::vector<double> coin2_distribution;
    double success_probability = 0.0;  // position marginal at the target
    // |<payload|coin1 state after recovery>|^2 conditioned on the target
    // position, second coin traced out
    double payload_fidelity = 0.0;
};

/*
 * Seven-step transfer of a qubit payload on the 8-cycle from vertex 0 to
 * vertex 5: X on coin 1 at step 1, X on coin 2 at step 6, identity
 * elsewhere, recovery X on coin 1.
 */
Schedule cycle8_schedule();

/*
 * 2n-step transfer on the complete graph with n vertices from vertex 0 to
 * vertex y: both coins idle except coin 2 gets the cyclic increment at step
 * 2n - 2y + 2. For y = 0 that index exceeds the walk, so every coin is the
 * identity and the walker returns home; the schedule is total either way.
 */
Schedule complete_pst_schedule(int n, int y);

/*
 * Drops steps that provably do nothing:
 *  (a) coin-2 identity steps while coin 2 is still guaranteed |0> (their
 *      shift adds 0; complete-graph shifts only), and
 *  (b) the longest step prefix whose composed unitary is the identity.
 * The result is marked `simplified` and acts identically to the input on
 * every initial state with coin 2 in |0>.
 */
Schedule simplify(const Schedule& schedule);

/*
 * Runs the schedule on |source> (x) payload (x) |0>, recovery included,
 * and reports the final distributions, the success probability at the
 * target vertex and the payload fidelity.
 */
TransferReport verify_transfer(const Schedule& schedule, const CoinStateSpec& payload);

/*
 * Exhaustive search for qubit-payload transfer schedules on the l-cycle
 * from `source` to `target`: every coin assignment from {I, X} over
 * alternating steps of length 0..max_steps is tried, and a candidate
 * qualifies when some fixed recovery in {I, X} on coin 1 restores every
 * payload exactly (checked on the coin-1 basis plus phase coherence of the
 * leftover coin-2 factor). Results are sorted by step count.
 * Guards: l <= 12, max_steps <= 12.
 */
std::vector<Schedule> search_cycle_schedules(int l, int source, int target,
                                             int max_steps);

}  // namespace twocoin
