// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "twocoin/hilbert.hpp"
#include "twocoin/walk.hpp"

namespace twocoin::testutil {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Dense conditional-shift matrix straight from the defining sums of
// |k><i| (x) |j><j| terms; independent of the engine's permutation loops.
inline Eigen::MatrixXcd oracle_shift_matrix(const HilbertLayout& l, int coin_index,
                                            ShiftKind kind) {
    const int n = l.position_dim;
    const int cd = (coin_index == 1) ? l.coin1_dim : l.coin2_dim;
    Eigen::MatrixXcd pos_coin = Eigen::MatrixXcd::Zero(n * cd, n * cd);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < cd; ++j) {
            int k;
            if (kind == ShiftKind::cycle) {
                k = (j == 0) ? (i + 1) % n : (i + n - 1) % n;
            } else {
                k = (i + j) % n;
            }
            pos_coin(k * cd + j, i * cd + j) = 1.0;
        }
    }
    // embed into position (x) coin1 (x) coin2 order
    if (coin_index == 1) {
        // pos_coin indexes (v, c1); insert identity on coin2 (fastest)
        return kron(pos_coin, Eigen::MatrixXcd::Identity(l.coin2_dim, l.coin2_dim));
    }
    // coin 2: indexes (v, c2) but c1 sits between them; permute via explicit loop
    const int total = l.total_dim();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(total, total);
    for (int v = 0; v < n; ++v) {
        for (int c1 = 0; c1 < l.coin1_dim; ++c1) {
            for (int c2 = 0; c2 < cd; ++c2) {
                for (int v2 = 0; v2 < n; ++v2) {
                    const cx entry = pos_coin(v2 * cd + c2, v * cd + c2);
                    if (entry != cx{0.0, 0.0}) {
                        full(l.index(v2, c1, c2), l.index(v, c1, c2)) = entry;
                    }
                }
            }
        }
    }
    return full;
}

// I (x) C (x) I on the selected coin register, via Kronecker products.
inline Eigen::MatrixXcd oracle_coin_matrix(const HilbertLayout& l, int coin_index,
                                           const Eigen::MatrixXcd& c) {
    const Eigen::MatrixXcd ip =
        Eigen::MatrixXcd::Identity(l.position_dim, l.position_dim);
    const Eigen::MatrixXcd i1 =
        Eigen::MatrixXcd::Identity(l.coin1_dim, l.coin1_dim);
    const Eigen::MatrixXcd i2 =
        Eigen::MatrixXcd::Identity(l.coin2_dim, l.coin2_dim);
    if (coin_index == 1) return kron(ip, kron(c, i2));
    return kron(ip, kron(i1, c));
}

inline CoinStateSpec random_payload(int dim, std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cx> c(dim);
    double n2 = 0.0;
    for (auto& a : c) {
        a = cx{normal(gen), normal(gen)};
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : c) a *= inv;
    return CoinStateSpec(std::move(c));
}

inline WalkState random_state(const HilbertLayout& l, std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    WalkState s(l);
    double n2 = 0.0;
    for (auto& a : s.amplitudes) {
        a = cx{normal(gen), normal(gen)};
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : s.amplitudes) a *= inv;
    return s;
}

// Haar-ish random unitary via QR of a Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) a(i, j) = cx{normal(gen), normal(gen)};
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const cx d = r(j, j);
        if (std::abs(d) > 1e-12) q.col(j) *= d / std::abs(d);
    }
    return q;
}

// One amplitude of a sparse expected state.
struct BasisAmp {
    int v, c1, c2;
    cx amp;
};

inline WalkState state_from(const HilbertLayout& l, const std::vector<BasisAmp>& amps) {
    WalkState s(l);
    for (const auto& a : amps) s.at(a.v, a.c1, a.c2) = a.amp;
    return s;
}

inline double max_amp_distance(const WalkState& a, const WalkState& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.amplitudes.size(); ++i) {
        m = std::max(m, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    }
    return m;
}

}  // namespace twocoin::testutil
