// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "testutil.hpp"
#include "twocoin/hilbert.hpp"

using namespace twocoin;

TEST_CASE("layout index/unindex round-trips every basis triple") {
    for (const auto& l : {HilbertLayout(8, 2, 2), HilbertLayout(4, 4, 4),
                          HilbertLayout(3, 2, 5)}) {
        std::vector<bool> seen(l.total_dim(), false);
        for (int v = 0; v < l.position_dim; ++v) {
            for (int c1 = 0; c1 < l.coin1_dim; ++c1) {
                for (int c2 = 0; c2 < l.coin2_dim; ++c2) {
                    const int idx = l.index(v, c1, c2);
                    REQUIRE(idx >= 0);
                    REQUIRE(idx < l.total_dim());
                    REQUIRE(!seen[idx]);
                    seen[idx] = true;
                    const auto t = l.unindex(idx);
                    CHECK(t[0] == v);
                    CHECK(t[1] == c1);
                    CHECK(t[2] == c2);
                }
            }
        }
    }
}

TEST_CASE("layout rejects degenerate registers") {
    CHECK_THROWS_AS(HilbertLayout(1, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(HilbertLayout(4, 1, 2), std::invalid_argument);
}

TEST_CASE("product state for the 8-cycle start configuration") {
    const HilbertLayout l(8, 2, 2);
    const CoinStateSpec payload({cx{0.5, 0.0}, cx{std::sqrt(3.0) / 2.0, 0.0}});
    const WalkState s = make_product_state(l, 0, payload, 0);
    CHECK(s.at(0, 0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.at(0, 1, 0).real() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    double rest = 0.0;
    for (int i = 0; i < l.total_dim(); ++i) {
        if (i != l.index(0, 0, 0) && i != l.index(0, 1, 0)) {
            rest += std::norm(s.amplitudes[i]);
        }
    }
    CHECK(rest == 0.0);
    CHECK(s.is_normalized());
}

TEST_CASE("product state on a single basis vector") {
    const HilbertLayout l(2, 2, 2);
    const WalkState s = make_product_state(l, 0, CoinStateSpec::basis(2, 0), 0);
    CHECK(s.amplitudes[0] == cx{1.0, 0.0});
    for (int i = 1; i < 8; ++i) CHECK(s.amplitudes[i] == cx{0.0, 0.0});
}

TEST_CASE("product state with a Bell coin on the 4-complete layout") {
    const HilbertLayout l(4, 4, 4);
    const double r = 1.0 / std::sqrt(2.0);
    const CoinStateSpec bell({cx{r, 0}, cx{0, 0}, cx{0, 0}, cx{r, 0}});
    const WalkState s = make_product_state(l, 0, bell, 0);
    CHECK(std::abs(s.at(0, 0, 0) - cx{r, 0.0}) < 1e-12);
    CHECK(std::abs(s.at(0, 3, 0) - cx{r, 0.0}) < 1e-12);
    CHECK(s.is_normalized());
}

TEST_CASE("product state rejects dimension mismatches") {
    const HilbertLayout l(8, 2, 2);
    CHECK_THROWS_AS(make_product_state(l, 0, CoinStateSpec::basis(4, 0), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_product_state(l, 8, CoinStateSpec::basis(2, 0), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_product_state(l, 0, CoinStateSpec::basis(2, 0), 2),
                    std::invalid_argument);
}

TEST_CASE("marginals of the transferred 8-cycle state") {
    // |101>(1/2 |1> + sqrt(3)/2 |0>)|1>, i.e. the pre-recovery final state
    const HilbertLayout l(8, 2, 2);
    WalkState s(l);
    s.at(5, 1, 1) = cx{0.5, 0.0};
    s.at(5, 0, 1) = cx{std::sqrt(3.0) / 2.0, 0.0};

    const auto pos = marginal_distribution(s, Subsystem::position);
    for (int v = 0; v < 8; ++v) {
        CHECK(pos[v] == doctest::Approx(v == 5 ? 1.0 : 0.0).epsilon(1e-12));
    }
    const auto coin1 = marginal_distribution(s, Subsystem::coin1);
    CHECK(coin1[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(coin1[1] == doctest::Approx(0.25).epsilon(1e-12));
    const auto coin2 = marginal_distribution(s, Subsystem::coin2);
    CHECK(coin2[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("marginals of product basis states are one-hot") {
    const HilbertLayout l(4, 4, 4);
    const WalkState s = make_product_state(l, 2, CoinStateSpec::basis(4, 3), 1);
    CHECK(marginal_distribution(s, Subsystem::position)[2] == 1.0);
    CHECK(marginal_distribution(s, Subsystem::coin1)[3] == 1.0);
    CHECK(marginal_distribution(s, Subsystem::coin2)[1] == 1.0);
}

TEST_CASE("marginals of random states are distributions") {
    std::mt19937_64 gen(1234);
    const HilbertLayout l(5, 3, 2);
    for (int rep = 0; rep < 25; ++rep) {
        const WalkState s = testutil::random_state(l, gen);
        for (auto sub : {Subsystem::position, Subsystem::coin1, Subsystem::coin2}) {
            const auto p = marginal_distribution(s, sub);
            double sum = 0.0;
            for (double v : p) {
                CHECK(v >= 0.0);
                sum += v;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("product states from random payloads stay normalized") {
    std::mt19937_64 gen(99);
    const HilbertLayout l(6, 4, 3);
    for (int rep = 0; rep < 50; ++rep) {
        const auto payload = testutil::random_payload(4, gen);
        CHECK(make_product_state(l, rep % 6, payload, rep % 3).is_normalized());
    }
}

TEST_CASE("overlap basics") {
    std::mt19937_64 gen(7);
    const HilbertLayout l(4, 2, 2);
    const WalkState s = testutil::random_state(l, gen);
    CHECK(std::abs(state_overlap(s, s) - cx{1.0, 0.0}) < 1e-12);

    const WalkState e0 = make_product_state(l, 0, CoinStateSpec::basis(2, 0), 0);
    const WalkState e1 = make_product_state(l, 1, CoinStateSpec::basis(2, 0), 0);
    CHECK(std::abs(state_overlap(e0, e1)) == 0.0);

    const HilbertLayout other(4, 2, 3);
    CHECK_THROWS_AS(state_overlap(s, WalkState(other)), std::invalid_argument);
}

TEST_CASE("overlap matches the transferred 2-complete state") {
    const HilbertLayout l(2, 2, 2);
    const CoinStateSpec payload({cx{0.5, 0.0}, cx{std::sqrt(3.0) / 2.0, 0.0}});
    // final state of the 2-complete transfer: |1>(payload)|1>
    WalkState final_state(l);
    final_state.at(1, 0, 1) = payload.coefficients[0];
    final_state.at(1, 1, 1) = payload.coefficients[1];
    const WalkState expected = make_product_state(l, 1, payload, 1);
    CHECK(std::abs(state_overlap(expected, final_state) - cx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("basis labels") {
    CHECK(basis_label(5, 8) == "101");
    CHECK(basis_label(0, 8) == "000");
    CHECK(basis_label(2, 4) == "10");
    CHECK(basis_label(1, 2) == "1");
    CHECK(basis_label(4, 6) == "4");
}
