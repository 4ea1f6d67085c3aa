// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "twocoin/hilbert.hpp"

namespace twocoin {

enum class CoinKind { identity, pauli_x, generalized_x, u3, matrix };

/*
 * Unitary acting on one coin register.
 *
 * identity/pauli_x/generalized_x are applied as exact index permutations;
 * u3 and explicit matrices go through a dense register update. The u3
 * convention is
 *   [ cos(t/2)              -e^{i*lambda} sin(t/2)          ]
 *   [ e^{i*phi} sin(t/2)     e^{i*(lambda+phi)} cos(t/2)    ]
 * including its global phase.
 */
struct CoinOperator {
    CoinKind kind = CoinKind::identity;
    int dim = 2;
    double theta = 0.0, phi = 0.0, lambda = 0.0;  // u3 parameters, radians
    Eigen::MatrixXcd mat;                         // kind == matrix only

    static CoinOperator identity(int dim);
    static CoinOperator pauli_x();
    // cyclic increment |k> -> |k+1 mod dim>
    static CoinOperator generalized_x(int dim);
    static CoinOperator u3(double theta, double phi, double lambda);
    // arbitrary unitary; rejected unless U^dag U = I within 1e-10
    static CoinOperator from_matrix(Eigen::MatrixXcd m);

    bool is_identity() const { return kind == CoinKind::identity; }
    Eigen::MatrixXcd matrix() const;
    std::string describe() const;
};

/// Conditional-shift family: cycle moves +1/-1 on coin |0>/|1>,
/// complete moves +j on coin |j> (all arithmetic mod position_dim).
enum class ShiftKind { cycle, complete };

struct ScheduleStep {
    int coin_index = 1;  // 1 or 2
    CoinOperator coin;
};

struct RecoveryOp {
    Subsystem reg = Subsystem::coin1;  // coin1 or coin2
    CoinOperator op;
};

/*
 * A walk protocol: ordered steps (coin register + coin operator; the shift
 * family and layout are fixed per schedule) followed by recovery operators.
 * Unless `simplified` is set, step t must use coin 1 when t is odd and
 * coin 2 when t is even (t counted from 1).
 */
struct Schedule {
    std::string label;
    HilbertLayout layout;
    ShiftKind shift_kind = ShiftKind::cycle;
    std::vector<ScheduleStep> steps;
    std::vector<RecoveryOp> recovery;
    int source = 0;
    int target = 0;
    bool simplified = false;

    int step_count() const { return static_cast<int>(steps.size()); }
    // Throws std::invalid_argument on alternation or dimension violations.
    void validate() const;
};

// I (x) C (x) I on the selected coin register.
WalkState apply_coin(const WalkState& state, int coin_index, const CoinOperator& coin);

// Exact basis permutation conditioned on the selected coin register.
// cycle requires that coin to be 2-dimensional; complete requires its
// dimension to equal position_dim.
WalkState apply_shift(const WalkState& state, int coin_index, ShiftKind kind);

// One walk step: coin operator, then the conditional shift on the same coin.
WalkState step(const WalkState& state, int coin_index, const CoinOperator& coin,
               ShiftKind kind);

// All steps in order, then the recovery operators.
WalkState evolve(const WalkState& state, const Schedule& schedule);

// First `count` steps only; no recovery. Used for step-by-step inspection.
WalkState evolve_prefix(const WalkState& state, const Schedule& schedule, int count);

/*
 * Dense matrix of the whole schedule (steps then recovery), built by
 * evolving every basis state. Brute-force oracle for equivalence checks;
 * guarded to total_dim <= 4096. Unitarity is verified on the result
 * (full U^dag U check up to dim 512, column norms above that).
 */
Eigen::MatrixXcd unitary_of(const Schedule& schedule);

// Dense matrix of steps [0, count) only; same guard, no recovery.
Eigen::MatrixXcd unitary_of_prefix(const Schedule& schedule, int count);

}  // namespace twocoin
