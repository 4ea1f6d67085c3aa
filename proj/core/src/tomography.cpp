// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include "twocoin/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace twocoin {

namespace {

constexpr double kHermitianTol = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Eigen::Matrix2cd basis_rotation(PauliBasis b) {
    Eigen::Matrix2cd m;
    switch (b) {
        case PauliBasis::Z:
            m.setIdentity();
            return m;
        case PauliBasis::X:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case PauliBasis::Y:
            // H * S^dag maps (|0> + i|1>)/sqrt(2) onto |0>
            m << 1, cx{0, -1}, 1, cx{0, 1};
            return m / std::sqrt(2.0);
    }
    return m;
}

}  // namespace

std::string to_string(PauliBasis b) {
    switch (b) {
        case PauliBasis::Z: return "Z";
        case PauliBasis::X: return "X";
        case PauliBasis::Y: return "Y";
    }
    return "?";
}

double ShotHistogram::probability(const std::string& outcome) const {
    const auto it = counts.find(outcome);
    if (it == counts.end() || shots == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(shots);
}

ShotHistogram sample_measurement(const WalkState& state, Subsystem reg,
                                 PauliBasis basis, long long shots,
                                 std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_measurement: shots must be >= 1");
    const int d = state.layout.subsystem_dim(reg);
    if (basis != PauliBasis::Z && d != 2) {
        throw std::invalid_argument(
            "sample_measurement: X/Y bases need a single-qubit register");
    }
    WalkState rotated = state;
    if (basis != PauliBasis::Z) {
        rotated = apply_register_matrix(state, reg, basis_rotation(basis));
    }
    const std::vector<double> p = marginal_distribution(rotated, reg);
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (size_t k = 0; k < p.size(); ++k) {
        acc += p[k];
        cdf[k] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0);

    ShotHistogram hist;
    hist.basis = basis;
    hist.shots = shots;
    hist.seed = seed;
    std::mt19937_64 gen(seed);
    for (long long s = 0; s < shots; ++s) {
        // 53-bit mantissa draw; portable across standard libraries
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const int k = static_cast<int>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ++hist.counts[basis_label(std::min<int>(k, d - 1), d)];
    }
    return hist;
}

double expectation(const ShotHistogram& hist) {
    if (hist.shots == 0) throw std::invalid_argument("expectation: empty histogram");
    for (const auto& [outcome, n] : hist.counts) {
        if (outcome != "0" && outcome != "1") {
            throw std::invalid_argument("expectation: histogram is not single-qubit");
        }
        (void)n;
    }
    const auto count = [&](const char* k) {
        const auto it = hist.counts.find(k);
        return it == hist.counts.end() ? 0ll : it->second;
    };
    return static_cast<double>(count("0") - count("1")) /
           static_cast<double>(hist.shots);
}

double expectation(double p_plus, double p_minus) { return p_plus - p_minus; }

DensityMatrix1Q::DensityMatrix1Q(const Eigen::Matrix2cd& mat) : m(mat) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw std::invalid_argument("DensityMatrix1Q: matrix is not Hermitian");
    }
    if (std::abs(m.trace().real() - 1.0) > kHermitianTol ||
        std::abs(m.trace().imag()) > kHermitianTol) {
        throw std::invalid_argument("DensityMatrix1Q: trace must be 1");
    }
}

DensityMatrix1Q DensityMatrix1Q::pure(const cx& a0, const cx& a1) {
    Eigen::Vector2cd v;
    v << a0, a1;
    const double n = v.norm();
    if (n < 1e-12) throw std::invalid_argument("DensityMatrix1Q::pure: zero vector");
    v /= n;
    return DensityMatrix1Q((v * v.adjoint()).eval());
}

double DensityMatrix1Q::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    return es.eigenvalues().minCoeff();
}

std::array<double, 3> DensityMatrix1Q::bloch() const {
    return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
            (m(0, 0) - m(1, 1)).real()};
}

DensityMatrix1Q DensityMatrix1Q::rounded(int decimals) const {
    const double scale = std::pow(10.0, decimals);
    Eigen::Matrix2cd r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r(i, j) = cx{std::round(m(i, j).real() * scale) / scale,
                         std::round(m(i, j).imag() * scale) / scale};
        }
    }
    return DensityMatrix1Q(r);
}

DensityMatrix1Q reconstruct(double x, double y, double z) {
    if (std::abs(x) > 1.0 + 1e-12 || std::abs(y) > 1.0 + 1e-12 ||
        std::abs(z) > 1.0 + 1e-12) {
        throw std::invalid_argument("reconstruct: expectations must lie in [-1, 1]");
    }
    Eigen::Matrix2cd m;
    m(0, 0) = (1.0 + z) / 2.0;
    m(1, 1) = (1.0 - z) / 2.0;
    m(0, 1) = cx{x / 2.0, -y / 2.0};
    m(1, 0) = cx{x / 2.0, y / 2.0};
    return DensityMatrix1Q(m);
}

namespace {

// clip negative eigenvalues to zero, renormalize trace; returns clipped weight
Eigen::Matrix2cd clip_psd(const Eigen::Matrix2cd& m, double& clipped) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    Eigen::Vector2d ev = es.eigenvalues();
    clipped = 0.0;
    for (int i = 0; i < 2; ++i) {
        if (ev[i] < 0.0) {
            clipped += -ev[i];
            ev[i] = 0.0;
        }
    }
    const double tr = ev.sum();
    if (tr <= 0.0) throw std::invalid_argument("fidelity: matrix has no positive weight");
    ev /= tr;
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix2cd psd_sqrt(const Eigen::Matrix2cd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix1Q& rho_t, const DensityMatrix1Q& rho_e,
                double* clip_adjustment) {
    double clip_t = 0.0, clip_e = 0.0;
    const Eigen::Matrix2cd t = clip_psd(rho_t.m, clip_t);
    const Eigen::Matrix2cd e = clip_psd(rho_e.m, clip_e);
    if (clip_adjustment) *clip_adjustment = clip_t + clip_e;

    const Eigen::Matrix2cd rt = psd_sqrt(t);
    const Eigen::Matrix2cd inner = rt * e * rt;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(inner);
    Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0);
    // rank-deficient products leave O(machine-eps) eigenvalue residue whose
    // square root would dominate the error; suppress it
    const double floor = 1e-13 * ev.maxCoeff();
    for (int i = 0; i < 2; ++i) {
        if (ev[i] < floor) ev[i] = 0.0;
    }
    const double tr = ev.cwiseSqrt().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

DensityMatrix1Q reduced_density(const WalkState& state, Subsystem reg) {
    const auto& l = state.layout;
    if (l.subsystem_dim(reg) != 2) {
        throw std::invalid_argument("reduced_density: register is not a qubit");
    }
    const int stride = l.subsystem_stride(reg);
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int base = 0; base < l.total_dim(); ++base) {
        if ((base / stride) % 2 != 0) continue;
        const cx a0 = state.amplitudes[base];
        const cx a1 = state.amplitudes[base + stride];
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    return DensityMatrix1Q(rho);
}

std::uint64_t derive_seed(std::uint64_t base, int run, PauliBasis basis) {
    const std::uint64_t tag =
        static_cast<std::uint64_t>(run) * 3u + static_cast<std::uint64_t>(basis) + 1u;
    return splitmix64(base ^ splitmix64(tag));
}

TomographyResult tomography_pipeline(const WalkState& state, Subsystem reg,
                                     long long shots, int runs, std::uint64_t seed,
                                     const std::optional<DensityMatrix1Q>& target) {
    if (state.layout.subsystem_dim(reg) != 2) {
        throw std::invalid_argument("tomography_pipeline: register is not a qubit");
    }
    if (shots < 0) throw std::invalid_argument("tomography_pipeline: shots must be >= 0");
    if (shots > 0 && runs < 1) {
        throw std::invalid_argument("tomography_pipeline: runs must be >= 1");
    }

    TomographyResult res;
    res.exact = (shots == 0);
    const PauliBasis bases[3] = {PauliBasis::X, PauliBasis::Y, PauliBasis::Z};
    double exp_of[3] = {0.0, 0.0, 0.0};
    if (res.exact) {
        for (int b = 0; b < 3; ++b) {
            const WalkState rotated =
                apply_register_matrix(state, reg, basis_rotation(bases[b]));
            const auto p = marginal_distribution(rotated, reg);
            exp_of[b] = expectation(p[0], p[1]);
        }
    } else {
        res.run_probabilities.assign(runs, {0.0, 0.0, 0.0});
        for (int b = 0; b < 3; ++b) {
            double acc = 0.0;
            for (int r = 0; r < runs; ++r) {
                const auto hist = sample_measurement(state, reg, bases[b], shots,
                                                     derive_seed(seed, r, bases[b]));
                acc += expectation(hist);
                res.run_probabilities[r][b] = hist.probability("0");
            }
            exp_of[b] = acc / runs;
        }
    }
    res.exp_x = exp_of[0];
    res.exp_y = exp_of[1];
    res.exp_z = exp_of[2];
    res.rho_e = reconstruct(res.exp_x, res.exp_y, res.exp_z);
    const auto bl = res.rho_e.bloch();
    res.bloch_exceeds_unit =
        bl[0] * bl[0] + bl[1] * bl[1] + bl[2] * bl[2] > 1.0 + 1e-12;
    res.rho_t = target ? *target : reduced_density(state, reg);
    res.fidelity_value = fidelity(res.rho_t, res.rho_e, &res.clip_adjustment);
    return res;
}

// ---- fixtures --------------------------------------------------------------

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        const size_t b = field.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            out.push_back("");
        } else {
            const size_t e = field.find_last_not_of(" \t\r");
            out.push_back(field.substr(b, e - b + 1));
        }
    }
    return out;
}

}  // namespace

FixtureTable parse_fixture_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    FixtureTable table;

    // column index per recognized name
    int col_z0 = -1, col_z1 = -1, col_xp = -1, col_xm = -1, col_yc = -1, col_yd = -1;
    int col_p0 = -1, col_p1 = -1;

    while (std::getline(in, line)) {
        ++line_no;
        const size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto fields = split_csv(line);
        if (header.empty()) {
            header = fields;
            if (header.empty() || header[0] != "run") {
                throw FixtureParseError(line_no, "header must start with 'run'");
            }
            for (size_t i = 1; i < header.size(); ++i) {
                const std::string& h = header[i];
                int* slot = nullptr;
                if (h == "z0") slot = &col_z0;
                else if (h == "z1") slot = &col_z1;
                else if (h == "xplus") slot = &col_xp;
                else if (h == "xminus") slot = &col_xm;
                else if (h == "ycross") slot = &col_yc;
                else if (h == "ydiv") slot = &col_yd;
                else if (h == "pos0") slot = &col_p0;
                else if (h == "pos1") slot = &col_p1;
                else throw FixtureParseError(line_no, "unknown column '" + h + "'");
                if (*slot >= 0) throw FixtureParseError(line_no, "duplicate column '" + h + "'");
                *slot = static_cast<int>(i);
            }
            if ((col_z0 >= 0) != (col_z1 >= 0) || (col_xp >= 0) != (col_xm >= 0) ||
                (col_yc >= 0) != (col_yd >= 0) || (col_p0 >= 0) != (col_p1 >= 0)) {
                throw FixtureParseError(line_no, "basis columns must come in pairs");
            }
            continue;
        }
        if (fields.size() != header.size()) {
            throw FixtureParseError(line_no, "expected " + std::to_string(header.size()) +
                                                 " fields, got " +
                                                 std::to_string(fields.size()));
        }
        auto value = [&](int col) -> double {
            try {
                size_t pos = 0;
                const double v = std::stod(fields[col], &pos);
                if (pos != fields[col].size()) throw std::invalid_argument("");
                return v;
            } catch (...) {
                throw FixtureParseError(line_no, "bad number '" + fields[col] + "'");
            }
        };
        auto pair = [&](int c0, int c1, const char* what) -> std::array<double, 2> {
            const double p0 = value(c0), p1 = value(c1);
            if (p0 < 0.0 || p1 < 0.0 || std::abs(p0 + p1 - 1.0) > 1e-3) {
                throw FixtureParseError(line_no, std::string(what) +
                                                     " probabilities must sum to 1");
            }
            return {p0, p1};
        };
        table.run_labels.push_back(fields[0]);
        if (col_z0 >= 0) table.z.push_back(pair(col_z0, col_z1, "Z"));
        if (col_xp >= 0) table.x.push_back(pair(col_xp, col_xm, "X"));
        if (col_yc >= 0) table.y.push_back(pair(col_yc, col_yd, "Y"));
        if (col_p0 >= 0) table.pos.push_back(pair(col_p0, col_p1, "position"));
    }
    if (header.empty()) throw FixtureParseError(line_no, "missing header row");
    if (table.run_labels.empty()) throw FixtureParseError(line_no, "no data rows");
    return table;
}

FixtureTable load_fixture_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_fixture_csv(buf.str());
}

FixtureExpectations fixture_expectations(const std::vector<FixtureTable>& tables) {
    FixtureExpectations out;
    auto fold = [](const std::vector<std::array<double, 2>>& rows) {
        double acc = 0.0;
        for (const auto& [p, q] : rows) acc += expectation(p, q);
        return acc / static_cast<double>(rows.size());
    };
    for (const auto& t : tables) {
        if (!t.z.empty()) {
            if (out.z) throw std::invalid_argument("fixture_expectations: duplicate Z data");
            out.z = fold(t.z);
        }
        if (!t.x.empty()) {
            if (out.x) throw std::invalid_argument("fixture_expectations: duplicate X data");
            out.x = fold(t.x);
        }
        if (!t.y.empty()) {
            if (out.y) throw std::invalid_argument("fixture_expectations: duplicate Y data");
            out.y = fold(t.y);
        }
    }
    return out;
}

}  // namespace twocoin
