// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include "twocoin/compile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twocoin {

namespace {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int log2_exact(int n) {
    int k = 0;
    while ((1 << k) < n) ++k;
    return k;
}

// qubit index of the bit with the given significance inside a span
// (span offset holds the most significant bit)
int span_bit(const RegisterSpan& span, int significance) {
    return span.offset + (span.size - 1 - significance);
}

void emit_mcx(Circuit& c, const std::vector<int>& controls, int target) {
    const int n = static_cast<int>(controls.size());
    if (n == 0) {
        c.append(Gate::x(target));
        return;
    }
    if (n == 1) {
        c.append(Gate::cnot(controls[0], target));
        return;
    }
    if (n == 2) {
        c.append(Gate::toffoli(controls[0], controls[1], target));
        return;
    }
    if (c.ancilla.size < n - 2) {
        throw std::logic_error("emit_mcx: ancilla span too small");
    }
    const int anc = c.ancilla.offset;
    c.append(Gate::toffoli(controls[0], controls[1], anc));
    for (int i = 2; i < n - 1; ++i) {
        c.append(Gate::toffoli(controls[i], anc + i - 2, anc + i - 1));
    }
    c.append(Gate::toffoli(controls[n - 1], anc + n - 3, target));
    for (int i = n - 2; i >= 2; --i) {
        c.append(Gate::toffoli(controls[i], anc + i - 2, anc + i - 1));
    }
    c.append(Gate::toffoli(controls[0], controls[1], anc));
}

// increment mod 2^size on the span, optionally controlled; MCX list with
// the highest bit first so every flip is conditioned on the original value
std::vector<std::pair<std::vector<int>, int>> increment_ops(const RegisterSpan& span,
                                                            int control) {
    std::vector<std::pair<std::vector<int>, int>> ops;
    for (int s = span.size - 1; s >= 0; --s) {
        std::vector<int> controls;
        if (control >= 0) controls.push_back(control);
        for (int lower = 0; lower < s; ++lower) controls.push_back(span_bit(span, lower));
        ops.push_back({std::move(controls), span_bit(span, s)});
    }
    return ops;
}

void emit_increment(Circuit& c, const RegisterSpan& span, int control) {
    for (const auto& [controls, target] : increment_ops(span, control)) {
        emit_mcx(c, controls, target);
    }
}

// inverse of emit_increment: the same self-inverse MCXs in reverse order
void emit_decrement(Circuit& c, const RegisterSpan& span, int control) {
    auto ops = increment_ops(span, control);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        emit_mcx(c, it->first, it->second);
    }
}

// u3 angles realizing a 2x2 unitary up to global phase
void u3_angles_of(const Eigen::Matrix2cd& u, double& theta, double& phi, double& lambda) {
    const double ca = std::abs(u(0, 0));
    const double sa = std::abs(u(1, 0));
    theta = 2.0 * std::atan2(sa, ca);
    if (sa < 1e-12) {  // diagonal: put everything in lambda
        phi = 0.0;
        lambda = std::arg(u(1, 1)) - std::arg(u(0, 0));
    } else if (ca < 1e-12) {  // anti-diagonal
        phi = 0.0;
        lambda = std::arg(-u(0, 1)) - std::arg(u(1, 0));
    } else {
        const double global = std::arg(u(0, 0));
        phi = std::arg(u(1, 0)) - global;
        lambda = std::arg(-u(0, 1)) - global;
    }
}

void emit_coin(Circuit& c, const RegisterSpan& span, const CoinOperator& coin) {
    switch (coin.kind) {
        case CoinKind::identity:
            return;
        case CoinKind::pauli_x:
            c.append(Gate::x(span.offset));
            return;
        case CoinKind::generalized_x:
            emit_increment(c, span, -1);
            return;
        case CoinKind::u3:
            c.append(Gate::u3(span.offset, coin.theta, coin.phi, coin.lambda));
            return;
        case CoinKind::matrix: {
            if (coin.dim != 2) {
                throw std::invalid_argument(
                    "compile_protocol: explicit coin matrices above dim 2 are not compilable");
            }
            double theta, phi, lambda;
            u3_angles_of(coin.mat, theta, phi, lambda);
            c.append(Gate::u3(span.offset, theta, phi, lambda));
            return;
        }
    }
}

void emit_shift(Circuit& c, ShiftKind kind, const RegisterSpan& coin_span) {
    if (kind == ShiftKind::complete) {
        // position += coin: one controlled add of 2^j per coin bit j
        for (int j = 0; j < coin_span.size; ++j) {
            const int control = span_bit(coin_span, j);
            for (int s = c.position.size - 1; s > j; --s) {
                std::vector<int> controls{control};
                for (int lower = j; lower < s; ++lower) {
                    controls.push_back(span_bit(c.position, lower));
                }
                emit_mcx(c, controls, span_bit(c.position, s));
            }
            c.append(Gate::cnot(control, span_bit(c.position, j)));
        }
    } else {
        const int cq = coin_span.offset;  // cycle coins are single qubits
        c.append(Gate::x(cq));
        emit_increment(c, c.position, cq);
        c.append(Gate::x(cq));
        emit_decrement(c, c.position, cq);
    }
}

int coin_ancilla_need(const CoinOperator& coin) {
    if (coin.kind == CoinKind::generalized_x) {
        return std::max(0, log2_exact(coin.dim) - 1 - 2);
    }
    return 0;
}

}  // namespace

Circuit compile_protocol(const Schedule& schedule) {
    schedule.validate();
    const auto& l = schedule.layout;
    if (!is_power_of_two(l.position_dim) || !is_power_of_two(l.coin1_dim) ||
        !is_power_of_two(l.coin2_dim)) {
        throw std::invalid_argument(
            "compile_protocol: register dimensions must be powers of two");
    }
    const int pk = log2_exact(l.position_dim);
    const int k1 = log2_exact(l.coin1_dim);
    const int k2 = log2_exact(l.coin2_dim);

    int max_controls = 0;
    for (const auto& st : schedule.steps) {
        max_controls = std::max(max_controls, pk);  // shift adders
        max_controls = std::max(max_controls, coin_ancilla_need(st.coin) + 2);
    }
    for (const auto& r : schedule.recovery) {
        max_controls = std::max(max_controls, coin_ancilla_need(r.op) + 2);
    }
    const int ancillas = std::max(0, max_controls - 2);

    Circuit c(pk + k1 + k2 + ancillas);
    c.position = {0, pk};
    c.coin1 = {pk, k1};
    c.coin2 = {pk + k1, k2};
    c.ancilla = {pk + k1 + k2, ancillas};

    for (const auto& st : schedule.steps) {
        const RegisterSpan& span = (st.coin_index == 1) ? c.coin1 : c.coin2;
        emit_coin(c, span, st.coin);
        emit_shift(c, schedule.shift_kind, span);
    }
    for (const auto& r : schedule.recovery) {
        emit_coin(c, (r.reg == Subsystem::coin1) ? c.coin1 : c.coin2, r.op);
    }
    return c;
}

Circuit prepare_payload_single(double theta, double phi, double lambda) {
    Circuit c(1);
    c.coin1 = {0, 1};
    c.append(Gate::u3(0, theta, phi, lambda));
    return c;
}

Circuit prepare_payload_bell() {
    Circuit c(2);
    c.coin1 = {0, 2};
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 1));
    return c;
}

Circuit prepare_payload_ghz() {
    Circuit c(3);
    c.coin1 = {0, 3};
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::cnot(1, 2));
    return c;
}

Circuit prepare_payload_w() {
    const double theta = 2.0 * std::acos(1.0 / std::sqrt(3.0));
    const double quarter = std::numbers::pi / 4.0;
    Circuit c(3);
    c.coin1 = {0, 3};
    c.append(Gate::u3(0, theta, 0.0, 0.0));
    // controlled Ry(pi/2) from qubit 0 onto qubit 2
    c.append(Gate::u3(2, quarter, 0.0, 0.0));
    c.append(Gate::cnot(0, 2));
    c.append(Gate::u3(2, quarter, std::numbers::pi, std::numbers::pi));
    c.append(Gate::cnot(0, 2));
    // fan the excitation out and relabel onto the one-hot triple
    c.append(Gate::cnot(0, 1));
    c.append(Gate::cnot(2, 1));
    c.append(Gate::x(0));
    return c;
}

}  // namespace twocoin
