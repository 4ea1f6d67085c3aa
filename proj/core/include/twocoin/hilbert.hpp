// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace twocoin {

using cx = std::complex<double>;

/// State norms (and marginal sums) must hold to this tolerance; double
/// precision drifts well below it over the short walks we run.
inline constexpr double kNormTol = 1e-10;
/// Tolerance for dense-matrix oracle comparisons (unitarity, equivalence).
inline constexpr double kUnitaryTol = 1e-9;

enum class Subsystem { position, coin1, coin2 };

std::string to_string(Subsystem s);

/*
 * Composite space: position register tensor two coin registers.
 * Flattening is position-major with coin2 fastest,
 *   index(v, c1, c2) = (v * coin1_dim + c1) * coin2_dim + c2,
 * so conditional shifts become contiguous strided updates.
 */
struct HilbertLayout {
    int position_dim = 2;
    int coin1_dim = 2;
    int coin2_dim = 2;

    HilbertLayout() = default;
    HilbertLayout(int position, int coin1, int coin2);

    int total_dim() const { return position_dim * coin1_dim * coin2_dim; }

    int index(int v, int c1, int c2) const {
        return (v * coin1_dim + c1) * coin2_dim + c2;
    }
    // (v, c1, c2) triple for a flat index
    std::array<int, 3> unindex(int idx) const {
        const int c2 = idx % coin2_dim;
        const int rest = idx / coin2_dim;
        return {rest / coin1_dim, rest % coin1_dim, c2};
    }

    int subsystem_dim(Subsystem s) const;
    // distance between consecutive values of a register, all else fixed
    int subsystem_stride(Subsystem s) const;

    bool operator==(const HilbertLayout&) const = default;
};

/// Payload to transport: dim complex coefficients with unit norm.
struct CoinStateSpec {
    std::vector<cx> coefficients;

    CoinStateSpec() = default;
    explicit CoinStateSpec(std::vector<cx> coeffs);

    int dim() const { return static_cast<int>(coefficients.size()); }

    static CoinStateSpec basis(int dim, int k);
};

/// Full walk state: total_dim complex amplitudes over the layout above.
struct WalkState {
    HilbertLayout layout;
    std::vector<cx> amplitudes;

    WalkState() = default;
    explicit WalkState(const HilbertLayout& l)
        : layout(l), amplitudes(l.total_dim(), cx{0.0, 0.0}) {}

    cx& at(int v, int c1, int c2) { return amplitudes[layout.index(v, c1, c2)]; }
    const cx& at(int v, int c1, int c2) const {
        return amplitudes[layout.index(v, c1, c2)];
    }

    double norm() const;
    bool is_normalized(double tol = kNormTol) const;

    Eigen::VectorXcd to_vector() const;
    static WalkState from_vector(const HilbertLayout& l, const Eigen::VectorXcd& v);
};

// |position> (x) sum_k coefficients[k] |k> (x) |coin2>
WalkState make_product_state(const HilbertLayout& layout, int position,
                             const CoinStateSpec& coin1, int coin2);

// Probability of each basis value of one register, other registers traced out.
std::vector<double> marginal_distribution(const WalkState& state, Subsystem s);

// <a|b>; layouts must match.
cx state_overlap(const WalkState& a, const WalkState& b);

// Applies a dim x dim unitary to one register (identity elsewhere).
WalkState apply_register_matrix(const WalkState& state, Subsystem s,
                                const Eigen::MatrixXcd& m);

// Basis labels used in reports and histograms: zero-padded binary
// (most-significant bit first) for power-of-two dims, decimal otherwise.
std::string basis_label(int value, int dim);

}  // namespace twocoin
