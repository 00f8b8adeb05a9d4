// Copyright 2026 The errtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "errtel/plus_cluster.h"

#include <cmath>

#include "errtel/noise.h"
#include "gtest/gtest.h"

using namespace errtel;
using namespace errtel::plus;

TEST(plus_cluster, shape_sizes) {
    PlusCluster a = build_plus_cluster({11, Shape::PlusA});
    ASSERT_EQ(a.topology.node_count(), 45u);
    ASSERT_EQ(a.topology.edge_count(), 44u);
    ASSERT_EQ(a.arms.size(), 4u);
    ASSERT_EQ(a.arms[2].size(), 11u);
    ASSERT_TRUE(a.topology.has_edge(a.centers[0], a.arms[2][0]));

    PlusCluster b = build_plus_cluster({11, Shape::DoubleB});
    ASSERT_EQ(b.topology.node_count(), 68u);
    ASSERT_EQ(b.topology.edge_count(), 67u);
    ASSERT_TRUE(b.topology.has_edge(b.centers[0], b.centers[1]));

    PlusCluster c = build_plus_cluster({11, Shape::QuadC});
    ASSERT_EQ(c.topology.node_count(), 92u);
    ASSERT_EQ(c.topology.edge_count(), 92u);

    ASSERT_EQ(build_plus_cluster({0, Shape::PlusA}).topology.node_count(), 1u);
}

TEST(plus_cluster, single_shot_closed_form) {
    ASSERT_NEAR(single_shot_success({11, Shape::PlusA}, 0.99), std::pow(0.99, 44), 1e-15);
    ASSERT_NEAR(single_shot_success({11, Shape::PlusA}, 0.99), 0.6426, 1e-4);
    ASSERT_NEAR(single_shot_success({11, Shape::DoubleB}, 0.99), 0.5100, 1e-4);
    ASSERT_EQ(single_shot_success({11, Shape::PlusA}, 1.0), 1.0);
}

TEST(plus_cluster, single_shot_monte_carlo) {
    uint64_t bonds = bond_count({3, Shape::PlusA});
    Tally t = run_trials(8, 0, 20000, 1, [&](Rng &rng, Tally &tally) { single_shot_trial(bonds, 0.95, rng, tally); });
    double expected = std::pow(0.95, 12);
    double sigma = std::sqrt(expected * (1 - expected) / 20000);
    ASSERT_NEAR(estimate_from(t).value, expected, 4 * sigma);
}

TEST(plus_cluster, bond_success_recursion) {
    ASSERT_NEAR(bond_success_probability(1, 1, 0.7), 0.7, 1e-15);
    ASSERT_NEAR(bond_success_probability(3, 3, 0.7), 0.7 + 0.3 * 0.7, 1e-15);
    ASSERT_NEAR(bond_success_probability(4, 2, 0.5), 0.5, 1e-15);
    ASSERT_EQ(bond_success_probability(0, 5, 0.9), 0.0);
    ASSERT_NEAR(bond_success_probability(6, 6, 1.0), 1.0, 1e-15);
}

TEST(plus_cluster, attempt_bond_matches_recursion) {
    PlusCluster a = build_plus_cluster({5, Shape::PlusA});
    BondingPair base = make_bonding_pair(a, 0, a, 1);
    const double p = 0.4;
    const int n = 4000;
    int successes = 0;
    Rng rng(21);
    for (int k = 0; k < n; k++) {
        BondingPair pair = base;
        BondResult r = attempt_bond(pair.state, pair.arm_a, pair.arm_b, p, rng);
        successes += r.succeeded;
        ASSERT_LE(r.attempts_used, 3u);
        ASSERT_EQ(pair.arm_a.size(), 5u - r.arm_qubits_consumed);
        ASSERT_EQ(pair.arm_a.size(), pair.arm_b.size());
        if (r.succeeded) {
            ASSERT_EQ(r.arm_qubits_consumed, 2 * (r.attempts_used - 1));
        }
    }
    double expected = bond_success_probability(5, 5, p);
    double sigma = std::sqrt(expected * (1 - expected) / n);
    ASSERT_NEAR(successes / double(n), expected, 4 * sigma);
}

TEST(plus_cluster, noiseless_bond_after_failures_is_clean) {
    PlusCluster a = build_plus_cluster({6, Shape::PlusA});
    BondingPair base = make_bonding_pair(a, 0, a, 0);
    Rng rng(31);
    for (int k = 0; k < 200; k++) {
        BondingPair pair = base;
        BondResult r = attempt_bond(pair.state, pair.arm_a, pair.arm_b, 0.5, rng);
        if (!r.succeeded) {
            continue;
        }
        std::vector<QubitId> path = interstitial_path(pair.center_a, pair.arm_a, pair.arm_b, pair.center_b);
        ASSERT_EQ(reduce_interstitial(pair.state, path, rng), pair.arm_a.size() * 2);
        std::vector<QubitId> na;
        std::vector<QubitId> nb;
        QubitId offset = static_cast<QubitId>(a.topology.node_count());
        for (size_t arm = 1; arm < 4; arm++) {
            na.push_back(a.arms[arm][0]);
            nb.push_back(a.arms[arm][0] + offset);
        }
        BondCheck check = check_bond(pair.state, pair.center_a, na, pair.center_b, nb);
        ASSERT_FALSE(check.flip_a);
        ASSERT_FALSE(check.flip_b);
    }
}

TEST(plus_cluster, reduce_interstitial_validates) {
    PlusCluster a = build_plus_cluster({2, Shape::PlusA});
    BondingPair pair = make_bonding_pair(a, 0, a, 0);
    Rng rng(1);
    pair.state.apply_cz(pair.arm_a.back(), pair.arm_b.back());
    std::vector<QubitId> odd{pair.center_a, pair.arm_a[0], pair.arm_a[1], pair.arm_b[1], pair.center_b};
    ASSERT_THROW(reduce_interstitial(pair.state, odd, rng), std::invalid_argument);
    pair.state.mark_lost(pair.arm_b[0], rng);
    std::vector<QubitId> broken = interstitial_path(pair.center_a, pair.arm_a, pair.arm_b, pair.center_b);
    ASSERT_THROW(reduce_interstitial(pair.state, broken, rng), std::invalid_argument);
    std::vector<QubitId> empty_a;
    ASSERT_THROW(attempt_bond(pair.state, empty_a, pair.arm_a, 0.5, rng), std::invalid_argument);
}

TEST(plus_cluster, node_error_exact_enumeration) {
    // Enumerate every Pauli pattern on the 4 interstitial qubits of n_l = 2
    // and weight it by the depolarizing probabilities.
    const uint32_t n_l = 2;
    const double p = 0.3;
    PlusCluster a = build_plus_cluster({n_l, Shape::PlusA});
    BondingPair base = make_bonding_pair(a, 0, a, 0);
    base.state.apply_cz(base.arm_a.back(), base.arm_b.back());
    std::vector<QubitId> path = interstitial_path(base.center_a, base.arm_a, base.arm_b, base.center_b);
    QubitId offset = static_cast<QubitId>(a.topology.node_count());
    std::vector<QubitId> na{a.arms[1][0], a.arms[2][0], a.arms[3][0]};
    std::vector<QubitId> nb{a.arms[1][0] + offset, a.arms[2][0] + offset, a.arms[3][0] + offset};
    double wrong = 0;
    Rng rng(5);
    for (uint32_t code = 0; code < 256; code++) {
        StabilizerTableau state = base.state;
        double weight = 1;
        for (size_t k = 0; k < 4; k++) {
            Pauli e = static_cast<Pauli>((code >> (2 * k)) & 3);
            weight *= e == Pauli::I ? 1 - 3 * p / 4 : p / 4;
            if (e != Pauli::I) {
                state.apply_pauli(path[k + 1], e);
            }
        }
        reduce_interstitial(state, path, rng);
        if (check_bond(state, path.front(), na, path.back(), nb).parity_flipped()) {
            wrong += weight;
        }
    }
    ASSERT_NEAR(wrong, node_error_closed_form(n_l, p), 1e-12);
    ASSERT_NEAR(wrong, noise::odd_parity_rate(p / 2, 4), 1e-12);
}

TEST(plus_cluster, node_error_monte_carlo) {
    Estimate e = effective_node_error(3, 0.1, 20000, 77);
    double expected = node_error_closed_form(3, 0.1);
    double sigma = std::sqrt(expected * (1 - expected) / 20000);
    ASSERT_NEAR(e.value, expected, 4 * sigma);
    ASSERT_EQ(effective_node_error(3, 0.0, 500, 1).value, 0.0);
    ASSERT_THROW(NodeErrorExperiment(0), std::invalid_argument);
}

TEST(plus_cluster, node_error_deterministic_across_threads) {
    Estimate a = effective_node_error(2, 0.2, 3000, 5, 1);
    Estimate b = effective_node_error(2, 0.2, 3000, 5, 3);
    ASSERT_EQ(a.tally, b.tally);
}

TEST(plus_cluster, strategy_rows) {
    std::vector<StrategyRow> rows = compare_strategies(11, 0.99, 1e-3);
    ASSERT_EQ(rows.size(), 3u);
    ASSERT_EQ(rows[0].shape, Shape::PlusA);
    ASSERT_NEAR(rows[0].p_eff, 0.01088, 1e-5);
    ASSERT_NEAR(rows[1].p_eff, 1e-3, 1e-15);
    ASSERT_NEAR(rows[0].single_shot_success, 0.6426, 1e-4);
    ASSERT_NEAR(rows[1].single_shot_success, 0.5100, 1e-4);
    ASSERT_NEAR(rows[1].expected_clusters_per_node, 1 / rows[1].single_shot_success, 1e-12);
    ASSERT_EQ(parse_shape("DoubleB"), Shape::DoubleB);
    ASSERT_FALSE(parse_shape("Triangle").has_value());
}
