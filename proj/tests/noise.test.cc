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

#include "errtel/noise.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace errtel;
using namespace errtel::noise;

TEST(noise, depolarizing_frequencies) {
    Rng rng(9);
    const int n = 400000;
    const double p = 0.4;
    int counts[4] = {};
    for (int k = 0; k < n; k++) {
        counts[static_cast<int>(sample_depolarizing(p, rng))]++;
    }
    double sigma = std::sqrt(p / 4 * (1 - p / 4) / n);
    for (Pauli e : {Pauli::X, Pauli::Y, Pauli::Z}) {
        ASSERT_NEAR(counts[static_cast<int>(e)] / double(n), p / 4, 5 * sigma);
    }
    ASSERT_EQ(sample_depolarizing(0, rng), Pauli::I);
    ASSERT_THROW(sample_depolarizing(1.5, rng), std::invalid_argument);
}

TEST(noise, effective_error_rate_closed_form) {
    ASSERT_NEAR(effective_error_rate(0.1, 5), 0.40951, 1e-12);
    ASSERT_EQ(effective_error_rate(0.3, 0), 0.0);
    ASSERT_EQ(effective_error_rate(0.0, 10), 0.0);
    ASSERT_EQ(effective_error_rate(1.0, 3), 1.0);
    ASSERT_NEAR(effective_error_rate(1e-3, 1), 1e-3, 1e-15);
}

TEST(noise, odd_parity_rate_matches_enumeration) {
    for (double q : {0.0, 0.05, 0.3, 0.5, 0.9}) {
        for (uint64_t m = 0; m <= 8; m++) {
            double odd = 0;
            for (uint64_t mask = 0; mask < (uint64_t{1} << m); mask++) {
                int ones = __builtin_popcountll(mask);
                if (ones % 2) {
                    odd += std::pow(q, ones) * std::pow(1 - q, static_cast<double>(m) - ones);
                }
            }
            ASSERT_NEAR(odd_parity_rate(q, m), odd, 1e-12) << q << " " << m;
        }
    }
    ASSERT_NEAR(odd_parity_rate(5e-4, 22), 0.010885, 1e-6);
    // Large m goes through the log path.
    ASSERT_NEAR(odd_parity_rate(1e-3, 5000), (1 - std::pow(0.998, 5000)) / 2, 1e-12);
}

TEST(noise, majority_vote_small_cases) {
    ASSERT_NEAR(majority_vote_error(0.1, 1), 0.1, 1e-15);
    // 3 voters: 3 p^2 (1-p) + p^3
    ASSERT_NEAR(majority_vote_error(0.1, 3), 3 * 0.01 * 0.9 + 0.001, 1e-15);
    // 2 voters: p^2 + tie mass 2p(1-p) weighted by the rule
    ASSERT_NEAR(majority_vote_error(0.1, 2, TieRule::Optimistic), 0.01, 1e-15);
    ASSERT_NEAR(majority_vote_error(0.1, 2, TieRule::Pessimistic), 0.01 + 0.18, 1e-15);
    ASSERT_NEAR(majority_vote_error(0.1, 2, TieRule::Random), 0.01 + 0.09, 1e-15);
    ASSERT_NEAR(majority_vote_error(0.1, 2), majority_vote_error(0.1, 2, TieRule::Random), 0);
    ASSERT_THROW(majority_vote_error(0.1, 0), std::invalid_argument);
}

TEST(noise, majority_vote_monotone_in_voters_below_half) {
    for (double p : {0.01, 0.1, 0.3}) {
        double last = 1;
        for (uint64_t k = 1; k <= 41; k += 2) {
            double e = majority_vote_error(p, k);
            ASSERT_LE(e, last + 1e-15);
            last = e;
        }
    }
}

TEST(noise, tie_rules_parse) {
    ASSERT_EQ(parse_tie_rule("random"), TieRule::Random);
    ASSERT_EQ(parse_tie_rule("optimistic"), TieRule::Optimistic);
    ASSERT_FALSE(parse_tie_rule("coin").has_value());
    ASSERT_EQ(tie_rule_name(TieRule::Pessimistic), "pessimistic");
}

TEST(noise, noise_spec_validation) {
    NoiseSpec ok{0.1, 0.2, 0.99};
    ok.validate();
    ASSERT_THROW((NoiseSpec{-0.1, 0, 1}.validate()), std::invalid_argument);
    ASSERT_THROW((NoiseSpec{0, 2, 1}.validate()), std::invalid_argument);
    ASSERT_THROW((NoiseSpec{0, 0, 0}.validate()), std::invalid_argument);
}
