// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include "twocoin/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twocoin {

namespace {

constexpr double kSearchTol = 1e-9;

std::string coin_tag(const CoinOperator& c) { return c.describe(); }

}  // namespace

Schedule cycle8_schedule() {
    Schedule s;
    s.label = "cycle8";
    s.layout = HilbertLayout(8, 2, 2);
    s.shift_kind = ShiftKind::cycle;
    s.source = 0;
    s.target = 5;
    for (int t = 1; t <= 7; ++t) {
        ScheduleStep st;
        st.coin_index = (t % 2 == 1) ? 1 : 2;
        const bool flip = (t == 1 || t == 6);
        st.coin = flip ? CoinOperator::pauli_x() : CoinOperator::identity(2);
        s.steps.push_back(st);
    }
    s.recovery.push_back({Subsystem::coin1, CoinOperator::pauli_x()});
    s.validate();
    return s;
}

Schedule complete_pst_schedule(int n, int y) {
    if (n < 2) throw std::invalid_argument("complete_pst_schedule: n must be >= 2");
    if (y < 0 || y >= n) {
        throw std::invalid_argument("complete_pst_schedule: target vertex out of range");
    }
    Schedule s;
    s.label = "complete-pst n=" + std::to_string(n) + " y=" + std::to_string(y);
    s.layout = HilbertLayout(n, n, n);
    s.shift_kind = ShiftKind::complete;
    s.source = 0;
    s.target = y;
    const int flip_step = 2 * n - 2 * y + 2;  // beyond the walk when y = 0
    for (int t = 1; t <= 2 * n; ++t) {
        ScheduleStep st;
        st.coin_index = (t % 2 == 1) ? 1 : 2;
        st.coin = (y >= 1 && t == flip_step) ? CoinOperator::generalized_x(n)
                                             : CoinOperator::identity(n);
        s.steps.push_back(st);
    }
    s.validate();
    return s;
}

Schedule simplify(const Schedule& schedule) {
    schedule.validate();
    if (schedule.layout.total_dim() > 4096) {
        throw std::invalid_argument("simplify: total_dim exceeds the oracle guard");
    }

    Schedule out = schedule;
    out.steps.clear();
    out.simplified = true;
    if (!out.label.empty()) out.label += " (simplified)";

    // (a) Coin-2 identity steps shift by the coin value; while coin 2 is
    // still guaranteed |0> on a complete graph that value is 0.
    bool coin2_zero = true;
    for (const auto& st : schedule.steps) {
        if (st.coin_index == 2) {
            if (st.coin.is_identity() && coin2_zero &&
                schedule.shift_kind == ShiftKind::complete) {
                continue;
            }
            if (!st.coin.is_identity()) coin2_zero = false;
        }
        out.steps.push_back(st);
    }

    // (b) Longest prefix composing to the identity, built incrementally:
    // columns of the running product are evolved one step at a time.
    const int n = out.layout.total_dim();
    std::vector<WalkState> columns;
    columns.reserve(n);
    for (int k = 0; k < n; ++k) {
        WalkState basis(out.layout);
        basis.amplitudes[k] = 1.0;
        columns.push_back(std::move(basis));
    }
    int drop = 0;
    for (int k = 1; k <= out.step_count(); ++k) {
        const auto& st = out.steps[k - 1];
        double max_dev = 0.0;
        for (int c = 0; c < n; ++c) {
            columns[c] = step(columns[c], st.coin_index, st.coin, out.shift_kind);
            for (int i = 0; i < n; ++i) {
                const cx want = (i == c) ? cx{1.0, 0.0} : cx{0.0, 0.0};
                max_dev = std::max(max_dev, std::abs(columns[c].amplitudes[i] - want));
            }
        }
        if (max_dev <= kUnitaryTol) drop = k;
    }
    out.steps.erase(out.steps.begin(), out.steps.begin() + drop);
    return out;
}

TransferReport verify_transfer(const Schedule& schedule, const CoinStateSpec& payload) {
    schedule.validate();
    const WalkState initial =
        make_product_state(schedule.layout, schedule.source, payload, 0);
    const WalkState final_state = evolve(initial, schedule);

    TransferReport r;
    r.schedule_label = schedule.label;
    r.target = schedule.target;
    r.position_distribution = marginal_distribution(final_state, Subsystem::position);
    r.coin1_distribution = marginal_distribution(final_state, Subsystem::coin1);
    r.coin2_distribution = marginal_distribution(final_state, Subsystem::coin2);
    r.success_probability = r.position_distribution[schedule.target];

    // Probability that a coin-1 measurement in the {payload, orthogonal}
    // basis yields "payload", conditioned on landing at the target.
    const auto& l = schedule.layout;
    double matched = 0.0;
    for (int c2 = 0; c2 < l.coin2_dim; ++c2) {
        cx amp{0.0, 0.0};
        for (int c1 = 0; c1 < l.coin1_dim; ++c1) {
            amp += std::conj(payload.coefficients[c1]) *
                   final_state.at(schedule.target, c1, c2);
        }
        matched += std::norm(amp);
    }
    r.payload_fidelity = (r.success_probability > 0.0)
                             ? matched / r.success_probability
                             : 0.0;
    return r;
}

namespace {

// Transfer check for one candidate: evolve both coin-1 basis payloads,
// apply the candidate recovery, and require all amplitude at
// (target, original basis value) with an identical leftover coin-2 factor
// for both payloads (a relative factor would corrupt superpositions).
bool qualifies(const Schedule& candidate, const CoinOperator& recovery_op) {
    const auto& l = candidate.layout;
    std::vector<std::vector<cx>> leftovers;
    for (int j = 0; j < 2; ++j) {
        WalkState s = make_product_state(l, candidate.source, CoinStateSpec::basis(2, j), 0);
        s = evolve(s, candidate);  // candidate carries no recovery yet
        s = apply_register_matrix(s, Subsystem::coin1, recovery_op.matrix());
        std::vector<cx> gamma(l.coin2_dim, cx{0.0, 0.0});
        double off_support = 0.0;
        for (int i = 0; i < l.total_dim(); ++i) {
            const auto [v, c1, c2] = l.unindex(i);
            if (v == candidate.target && c1 == j) {
                gamma[c2] = s.amplitudes[i];
            } else {
                off_support += std::norm(s.amplitudes[i]);
            }
        }
        if (off_support > kSearchTol) return false;
        leftovers.push_back(std::move(gamma));
    }
    for (int c2 = 0; c2 < l.coin2_dim; ++c2) {
        if (std::abs(leftovers[0][c2] - leftovers[1][c2]) > kSearchTol) return false;
    }
    return true;
}

}  // namespace

std::vector<Schedule> search_cycle_schedules(int l, int source, int target,
                                             int max_steps) {
    if (l < 2 || l > 12) {
        throw std::invalid_argument("search_cycle_schedules: l must be in [2, 12]");
    }
    if (max_steps < 0 || max_steps > 12) {
        throw std::invalid_argument("search_cycle_schedules: max_steps must be in [0, 12]");
    }
    if (source < 0 || source >= l || target < 0 || target >= l) {
        throw std::invalid_argument("search_cycle_schedules: vertex out of range");
    }

    const HilbertLayout layout(l, 2, 2);
    std::vector<Schedule> found;
    for (int steps = 0; steps <= max_steps; ++steps) {
        for (unsigned mask = 0; mask < (1u << steps); ++mask) {
            Schedule cand;
            cand.layout = layout;
            cand.shift_kind = ShiftKind::cycle;
            cand.source = source;
            cand.target = target;
            for (int t = 1; t <= steps; ++t) {
                ScheduleStep st;
                st.coin_index = (t % 2 == 1) ? 1 : 2;
                st.coin = (mask & (1u << (t - 1))) ? CoinOperator::pauli_x()
                                                   : CoinOperator::identity(2);
                cand.steps.push_back(st);
            }
            for (const auto& rec : {CoinOperator::identity(2), CoinOperator::pauli_x()}) {
                if (!qualifies(cand, rec)) continue;
                Schedule hit = cand;
                if (!rec.is_identity()) {
                    hit.recovery.push_back({Subsystem::coin1, rec});
                }
                std::string tag = "cycle" + std::to_string(l) + " " +
                                  std::to_string(source) + "->" + std::to_string(target) +
                                  " [";
                for (size_t i = 0; i < hit.steps.size(); ++i) {
                    if (i) tag += " ";
                    tag += coin_tag(hit.steps[i].coin);
                }
                tag += "] rec=" + coin_tag(rec);
                hit.label = tag;
                found.push_back(std::move(hit));
                break;  // at most one recovery can match a given assignment
            }
        }
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const Schedule& a, const Schedule& b) {
                         return a.step_count() < b.step_count();
                     });
    return found;
}

}  // namespace twocoin
