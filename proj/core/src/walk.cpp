// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include "twocoin/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace twocoin {

namespace {

Subsystem coin_subsystem(int coin_index) {
    if (coin_index == 1) return Subsystem::coin1;
    if (coin_index == 2) return Subsystem::coin2;
    throw std::invalid_argument("coin_index must be 1 or 2");
}

bool approx_unitary(const Eigen::MatrixXcd& m, double tol) {
    Eigen::MatrixXcd g = m.adjoint() * m;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

CoinOperator CoinOperator::identity(int dim) {
    if (dim < 2) throw std::invalid_argument("CoinOperator: dim must be >= 2");
    CoinOperator c;
    c.kind = CoinKind::identity;
    c.dim = dim;
    return c;
}

CoinOperator CoinOperator::pauli_x() {
    CoinOperator c;
    c.kind = CoinKind::pauli_x;
    c.dim = 2;
    return c;
}

CoinOperator CoinOperator::generalized_x(int dim) {
    if (dim < 2) throw std::invalid_argument("CoinOperator: dim must be >= 2");
    CoinOperator c;
    c.kind = CoinKind::generalized_x;
    c.dim = dim;
    return c;
}

CoinOperator CoinOperator::u3(double theta, double phi, double lambda) {
    CoinOperator c;
    c.kind = CoinKind::u3;
    c.dim = 2;
    c.theta = theta;
    c.phi = phi;
    c.lambda = lambda;
    return c;
}

CoinOperator CoinOperator::from_matrix(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols() || m.rows() < 2) {
        throw std::invalid_argument("CoinOperator::from_matrix: need a square matrix, dim >= 2");
    }
    if (!approx_unitary(m, 1e-10)) {
        throw std::invalid_argument("CoinOperator::from_matrix: matrix is not unitary");
    }
    CoinOperator c;
    c.kind = CoinKind::matrix;
    c.dim = static_cast<int>(m.rows());
    c.mat = std::move(m);
    return c;
}

Eigen::MatrixXcd CoinOperator::matrix() const {
    switch (kind) {
        case CoinKind::identity:
            return Eigen::MatrixXcd::Identity(dim, dim);
        case CoinKind::pauli_x: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
            m(0, 1) = m(1, 0) = 1.0;
            return m;
        }
        case CoinKind::generalized_x: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
            for (int k = 0; k < dim; ++k) m((k + 1) % dim, k) = 1.0;
            return m;
        }
        case CoinKind::u3: {
            Eigen::MatrixXcd m(2, 2);
            const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
            m(0, 0) = c;
            m(0, 1) = -std::exp(cx{0.0, lambda}) * s;
            m(1, 0) = std::exp(cx{0.0, phi}) * s;
            m(1, 1) = std::exp(cx{0.0, lambda + phi}) * c;
            return m;
        }
        case CoinKind::matrix:
            return mat;
    }
    throw std::logic_error("CoinOperator::matrix: bad kind");
}

std::string CoinOperator::describe() const {
    switch (kind) {
        case CoinKind::identity: return "I";
        case CoinKind::pauli_x: return "X";
        case CoinKind::generalized_x: return "X" + std::to_string(dim);
        case CoinKind::u3:
            return "u3(" + std::to_string(theta) + "," + std::to_string(phi) + "," +
                   std::to_string(lambda) + ")";
        case CoinKind::matrix: return "matrix" + std::to_string(dim);
    }
    return "?";
}

void Schedule::validate() const {
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto& st = steps[i];
        if (st.coin_index != 1 && st.coin_index != 2) {
            throw std::invalid_argument("Schedule: coin_index must be 1 or 2");
        }
        if (!simplified) {
            const int expected = (i % 2 == 0) ? 1 : 2;
            if (st.coin_index != expected) {
                throw std::invalid_argument("Schedule: steps must alternate coins starting at coin 1");
            }
        }
        const int reg_dim = (st.coin_index == 1) ? layout.coin1_dim : layout.coin2_dim;
        if (st.coin.dim != reg_dim) {
            throw std::invalid_argument("Schedule: coin operator dimension does not match its register");
        }
        if (shift_kind == ShiftKind::cycle && reg_dim != 2) {
            throw std::invalid_argument("Schedule: cycle shifts need 2-dimensional coins");
        }
        if (shift_kind == ShiftKind::complete && reg_dim != layout.position_dim) {
            throw std::invalid_argument("Schedule: complete shifts need coin dim == position dim");
        }
    }
    for (const auto& r : recovery) {
        if (r.reg == Subsystem::position) {
            throw std::invalid_argument("Schedule: recovery acts on coin registers only");
        }
        const int reg_dim = layout.subsystem_dim(r.reg);
        if (r.op.dim != reg_dim) {
            throw std::invalid_argument("Schedule: recovery operator dimension mismatch");
        }
    }
    if (source < 0 || source >= layout.position_dim || target < 0 ||
        target >= layout.position_dim) {
        throw std::invalid_argument("Schedule: source/target vertex out of range");
    }
}

WalkState apply_coin(const WalkState& state, int coin_index, const CoinOperator& coin) {
    const Subsystem s = coin_subsystem(coin_index);
    const auto& l = state.layout;
    const int d = l.subsystem_dim(s);
    if (coin.dim != d) {
        throw std::invalid_argument("apply_coin: coin dimension does not match register");
    }
    switch (coin.kind) {
        case CoinKind::identity:
            return state;
        case CoinKind::pauli_x:
        case CoinKind::generalized_x: {
            // permutation |k> -> |k+1 mod d> (pauli_x is the d = 2 case)
            WalkState out(l);
            for (int i = 0; i < l.total_dim(); ++i) {
                auto [v, c1, c2] = l.unindex(i);
                int& c = (coin_index == 1) ? c1 : c2;
                c = (c + 1) % d;
                out.at(v, c1, c2) = state.amplitudes[i];
            }
            return out;
        }
        case CoinKind::u3:
        case CoinKind::matrix:
            return apply_register_matrix(state, s, coin.matrix());
    }
    throw std::logic_error("apply_coin: bad coin kind");
}

WalkState apply_shift(const WalkState& state, int coin_index, ShiftKind kind) {
    coin_subsystem(coin_index);
    const auto& l = state.layout;
    const int coin_dim = (coin_index == 1) ? l.coin1_dim : l.coin2_dim;
    const int n = l.position_dim;
    if (kind == ShiftKind::cycle && coin_dim != 2) {
        throw std::invalid_argument("apply_shift: cycle shift needs a 2-dimensional coin");
    }
    if (kind == ShiftKind::complete && coin_dim != n) {
        throw std::invalid_argument("apply_shift: complete shift needs coin dim == position dim");
    }
    WalkState out(l);
    for (int i = 0; i < l.total_dim(); ++i) {
        const auto [v, c1, c2] = l.unindex(i);
        const int c = (coin_index == 1) ? c1 : c2;
        int v2;
        if (kind == ShiftKind::cycle) {
            v2 = (c == 0) ? (v + 1) % n : (v + n - 1) % n;
        } else {
            v2 = (v + c) % n;
        }
        out.at(v2, c1, c2) = state.amplitudes[i];
    }
    return out;
}

WalkState step(const WalkState& state, int coin_index, const CoinOperator& coin,
               ShiftKind kind) {
    return apply_shift(apply_coin(state, coin_index, coin), coin_index, kind);
}

WalkState evolve_prefix(const WalkState& state, const Schedule& schedule, int count) {
    schedule.validate();
    if (count < 0 || count > schedule.step_count()) {
        throw std::invalid_argument("evolve_prefix: step count out of range");
    }
    if (!(state.layout == schedule.layout)) {
        throw std::invalid_argument("evolve_prefix: state layout does not match schedule");
    }
    WalkState s = state;
    for (int i = 0; i < count; ++i) {
        s = step(s, schedule.steps[i].coin_index, schedule.steps[i].coin,
                 schedule.shift_kind);
    }
    return s;
}

WalkState evolve(const WalkState& state, const Schedule& schedule) {
    WalkState s = evolve_prefix(state, schedule, schedule.step_count());
    for (const auto& r : schedule.recovery) {
        s = apply_register_matrix(s, r.reg, r.op.matrix());
    }
    return s;
}

namespace {

Eigen::MatrixXcd schedule_matrix(const Schedule& schedule, int count, bool with_recovery) {
    schedule.validate();
    const int n = schedule.layout.total_dim();
    if (n > 4096) {
        throw std::invalid_argument("unitary_of: total_dim exceeds the 4096 guard");
    }
    Eigen::MatrixXcd u(n, n);
    for (int k = 0; k < n; ++k) {
        WalkState basis(schedule.layout);
        basis.amplitudes[k] = 1.0;
        WalkState out = evolve_prefix(basis, schedule, count);
        if (with_recovery) {
            for (const auto& r : schedule.recovery) {
                out = apply_register_matrix(out, r.reg, r.op.matrix());
            }
        }
        for (int i = 0; i < n; ++i) u(i, k) = out.amplitudes[i];
    }
    if (n <= 512) {
        Eigen::MatrixXcd g = u.adjoint() * u;
        g.diagonal().array() -= 1.0;
        if (g.cwiseAbs().maxCoeff() > kUnitaryTol) {
            throw std::logic_error("unitary_of: result failed the unitarity check");
        }
    } else {
        for (int k = 0; k < n; ++k) {
            if (std::abs(u.col(k).norm() - 1.0) > kUnitaryTol) {
                throw std::logic_error("unitary_of: result failed the column-norm check");
            }
        }
    }
    return u;
}

}  // namespace

Eigen::MatrixXcd unitary_of(const Schedule& schedule) {
    return schedule_matrix(schedule, schedule.step_count(), true);
}

Eigen::MatrixXcd unitary_of_prefix(const Schedule& schedule, int count) {
    if (count < 0 || count > schedule.step_count()) {
        throw std::invalid_argument("unitary_of_prefix: step count out of range");
    }
    return schedule_matrix(schedule, count, false);
}

}  // namespace twocoin
