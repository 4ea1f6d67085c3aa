// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include "twocoin/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace twocoin {

std::string to_string(Subsystem s) {
    switch (s) {
        case Subsystem::position: return "position";
        case Subsystem::coin1: return "coin1";
        case Subsystem::coin2: return "coin2";
    }
    return "?";
}

HilbertLayout::HilbertLayout(int position, int coin1, int coin2)
    : position_dim(position), coin1_dim(coin1), coin2_dim(coin2) {
    if (position < 2 || coin1 < 2 || coin2 < 2) {
        throw std::invalid_argument("HilbertLayout: all register dimensions must be >= 2");
    }
}

int HilbertLayout::subsystem_dim(Subsystem s) const {
    switch (s) {
        case Subsystem::position: return position_dim;
        case Subsystem::coin1: return coin1_dim;
        case Subsystem::coin2: return coin2_dim;
    }
    return 0;
}

int HilbertLayout::subsystem_stride(Subsystem s) const {
    switch (s) {
        case Subsystem::position: return coin1_dim * coin2_dim;
        case Subsystem::coin1: return coin2_dim;
        case Subsystem::coin2: return 1;
    }
    return 0;
}

CoinStateSpec::CoinStateSpec(std::vector<cx> coeffs) : coefficients(std::move(coeffs)) {
    if (coefficients.size() < 2) {
        throw std::invalid_argument("CoinStateSpec: need at least 2 coefficients");
    }
    double n2 = 0.0;
    for (const auto& c : coefficients) n2 += std::norm(c);
    if (std::abs(n2 - 1.0) > kNormTol) {
        throw std::invalid_argument("CoinStateSpec: coefficients are not normalized");
    }
}

CoinStateSpec CoinStateSpec::basis(int dim, int k) {
    if (dim < 2 || k < 0 || k >= dim) {
        throw std::invalid_argument("CoinStateSpec::basis: index out of range");
    }
    std::vector<cx> c(dim, cx{0.0, 0.0});
    c[k] = cx{1.0, 0.0};
    return CoinStateSpec(std::move(c));
}

double WalkState::norm() const {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    return std::sqrt(n2);
}

bool WalkState::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

Eigen::VectorXcd WalkState::to_vector() const {
    Eigen::VectorXcd v(amplitudes.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = amplitudes[i];
    return v;
}

WalkState WalkState::from_vector(const HilbertLayout& l, const Eigen::VectorXcd& v) {
    if (v.size() != l.total_dim()) {
        throw std::invalid_argument("WalkState::from_vector: dimension mismatch");
    }
    WalkState s(l);
    for (Eigen::Index i = 0; i < v.size(); ++i) s.amplitudes[i] = v[i];
    return s;
}

WalkState make_product_state(const HilbertLayout& layout, int position,
                             const CoinStateSpec& coin1, int coin2) {
    if (position < 0 || position >= layout.position_dim) {
        throw std::invalid_argument("make_product_state: position out of range");
    }
    if (coin2 < 0 || coin2 >= layout.coin2_dim) {
        throw std::invalid_argument("make_product_state: coin2 basis index out of range");
    }
    if (coin1.dim() != layout.coin1_dim) {
        throw std::invalid_argument("make_product_state: coin1 spec dimension does not match layout");
    }
    WalkState s(layout);
    for (int c1 = 0; c1 < layout.coin1_dim; ++c1) {
        s.at(position, c1, coin2) = coin1.coefficients[c1];
    }
    return s;
}

std::vector<double> marginal_distribution(const WalkState& state, Subsystem s) {
    const auto& l = state.layout;
    std::vector<double> p(l.subsystem_dim(s), 0.0);
    for (int i = 0; i < l.total_dim(); ++i) {
        const auto [v, c1, c2] = l.unindex(i);
        const int k = (s == Subsystem::position) ? v : (s == Subsystem::coin1 ? c1 : c2);
        p[k] += std::norm(state.amplitudes[i]);
    }
    return p;
}

cx state_overlap(const WalkState& a, const WalkState& b) {
    if (!(a.layout == b.layout)) {
        throw std::invalid_argument("state_overlap: layout mismatch");
    }
    cx acc{0.0, 0.0};
    for (size_t i = 0; i < a.amplitudes.size(); ++i) {
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return acc;
}

WalkState apply_register_matrix(const WalkState& state, Subsystem s,
                                const Eigen::MatrixXcd& m) {
    const auto& l = state.layout;
    const int d = l.subsystem_dim(s);
    if (m.rows() != d || m.cols() != d) {
        throw std::invalid_argument("apply_register_matrix: matrix dimension mismatch");
    }
    const int stride = l.subsystem_stride(s);
    WalkState out = state;
    Eigen::VectorXcd in(d), res(d);
    // Visit each fiber of the register once: indices where the register is 0.
    for (int base = 0; base < l.total_dim(); ++base) {
        if ((base / stride) % d != 0) continue;
        for (int k = 0; k < d; ++k) in[k] = state.amplitudes[base + k * stride];
        res.noalias() = m * in;
        for (int k = 0; k < d; ++k) out.amplitudes[base + k * stride] = res[k];
    }
    return out;
}

std::string basis_label(int value, int dim) {
    if (dim >= 2 && (dim & (dim - 1)) == 0) {
        int bits = 0;
        while ((1 << bits) < dim) ++bits;
        std::string s(bits, '0');
        for (int b = 0; b < bits; ++b) {
            if (value & (1 << (bits - 1 - b))) s[b] = '1';
        }
        return s;
    }
    return std::to_string(value);
}

}  // namespace twocoin
