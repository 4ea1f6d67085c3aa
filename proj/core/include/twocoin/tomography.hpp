// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "twocoin/hilbert.hpp"

namespace twocoin {

enum class PauliBasis { Z, X, Y };

std::string to_string(PauliBasis b);

/*
 * Counts from repeated measurement of one register in one basis. The +1
 * eigenstates are |0>, |+> = (|0>+|1>)/sqrt(2) and (|0>+i|1>)/sqrt(2) and
 * always sort under outcome "0".
 */
struct ShotHistogram {
    PauliBasis basis = PauliBasis::Z;
    std::map<std::string, long long> counts;
    long long shots = 0;
    std::uint64_t seed = 0;

    double probability(const std::string& outcome) const;
};

/*
 * Basis pre-rotation (Z: none, X: H, Y: S^dag then H) followed by seeded
 * Born sampling of the register. X/Y need a 2-dimensional register.
 * Deterministic for a fixed seed: mt19937_64 with 53-bit uniform draws
 * against the cumulative outcome distribution.
 */
ShotHistogram sample_measurement(const WalkState& state, Subsystem reg,
                                 PauliBasis basis, long long shots,
                                 std::uint64_t seed);

// (count_0 - count_1) / shots for a single-qubit histogram.
double expectation(const ShotHistogram& hist);
// Same estimator from probabilities of the +1 / -1 eigenstates.
double expectation(double p_plus, double p_minus);

/// 2x2 Hermitian unit-trace matrix; finite-shot reconstructions may carry
/// a slightly negative eigenvalue, which fidelity() clips.
struct DensityMatrix1Q {
    Eigen::Matrix2cd m;

    DensityMatrix1Q() : m(Eigen::Matrix2cd::Zero()) {}
    explicit DensityMatrix1Q(const Eigen::Matrix2cd& mat);

    static DensityMatrix1Q pure(const cx& a0, const cx& a1);

    double min_eigenvalue() const;
    // (<X>, <Y>, <Z>)
    std::array<double, 3> bloch() const;
    // entries rounded to the given number of decimals (re and im separately)
    DensityMatrix1Q rounded(int decimals) const;
};

// (I + x X + y Y + z Z) / 2; entry(0,1) = (x - i y)/2.
DensityMatrix1Q reconstruct(double x, double y, double z);

/*
 * Uhlmann fidelity (tr sqrt(sqrt(rho_t) rho_e sqrt(rho_t)))^2 via 2x2
 * eigendecompositions. Negative eigenvalues are clipped to zero and the
 * trace renormalized first; the total clipped weight is reported through
 * `clip_adjustment` when given. Throws on non-Hermitian input.
 */
double fidelity(const DensityMatrix1Q& rho_t, const DensityMatrix1Q& rho_e,
                double* clip_adjustment = nullptr);

struct TomographyResult {
    double exp_x = 0.0, exp_y = 0.0, exp_z = 0.0;
    DensityMatrix1Q rho_e;
    DensityMatrix1Q rho_t;
    double fidelity_value = 0.0;
    double clip_adjustment = 0.0;  // eigenvalue weight clipped inside fidelity
    bool bloch_exceeds_unit = false;
    bool exact = false;
    // per (run, basis) +1-eigenstate probabilities, runs-major
    std::vector<std::array<double, 3>> run_probabilities;
};

/*
 * Full single-qubit study of one register: `runs` independent sampled
 * experiments per basis (stream-split seeds), expectations averaged over
 * runs, state reconstructed and compared against rho_t. With shots = 0 the
 * expectations come straight from Born probabilities (exact mode). When no
 * target is supplied the register's reduced density matrix is used.
 */
TomographyResult tomography_pipeline(const WalkState& state, Subsystem reg,
                                     long long shots, int runs, std::uint64_t seed,
                                     const std::optional<DensityMatrix1Q>& target = {});

// Reduced density matrix of a 2-dimensional register.
DensityMatrix1Q reduced_density(const WalkState& state, Subsystem reg);

// Deterministic per-(run, basis) sampling seed, splitmix64-derived.
std::uint64_t derive_seed(std::uint64_t base, int run, PauliBasis basis);

// ---- fixture tables (recorded runs, CSV) ----------------------------------

struct FixtureParseError : std::runtime_error {
    int line;
    FixtureParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

/*
 * CSV layout: a header row naming the probability columns, then one row
 * per recorded run. Recognized probability columns:
 *   z0,z1          Z-basis outcome probabilities of the studied qubit
 *   xplus,xminus   X-basis
 *   ycross,ydiv    Y-basis
 *   pos0,pos1      recorded position marginal (carried, unused by fidelity)
 * '#' lines are comments. Rows must sum to 1 per basis within 1e-3.
 */
struct FixtureTable {
    std::vector<std::string> run_labels;
    // per basis: one (p_plus, p_minus) per run; empty when absent
    std::vector<std::array<double, 2>> z, x, y, pos;
};

FixtureTable load_fixture_csv(const std::string& path);
FixtureTable parse_fixture_csv(const std::string& text);

// Merges the basis columns of several tables (duplicate bases rejected)
// and averages per-run expectations into mean <X>, <Y>, <Z>.
struct FixtureExpectations {
    std::optional<double> x, y, z;
};
FixtureExpectations fixture_expectations(const std::vector<FixtureTable>& tables);

}  // namespace twocoin
