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

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "errtel/pauli_string.h"
#include "errtel/rng.h"

namespace errtel::noise {

struct NoiseSpec {
    /// Depolarizing probability per qubit, in [0, 1].
    double p_error = 0;
    /// Heralded loss probability per qubit, in [0, 1].
    double eps_loss = 0;
    /// Entangling-gate success probability, in (0, 1].
    double p_gate = 1;

    /// Throws std::invalid_argument naming the first out-of-range field.
    void validate() const;
};

/// How an even split of majority-vote ballots is scored.
enum class TieRule : uint8_t {
    /// A tie never counts as an error.
    Optimistic,
    /// A tie always counts as an error.
    Pessimistic,
    /// A tie is broken by a fair coin.
    Random,
};

std::string_view tie_rule_name(TieRule rule);
std::optional<TieRule> parse_tie_rule(std::string_view text);
/// Error mass assigned to a tie: 0, 1 or 1/2.
double tie_weight(TieRule rule);

/// One draw of the channel rho -> (1-p) rho + p I/2, unraveled as
/// I with probability 1 - 3p/4 and each of X, Y, Z with probability p/4.
Pauli sample_depolarizing(double p_error, Rng &rng);

/// 1 - (1 - p)^n: the survivor's depolarizing rate once n depolarized
/// qubits of a maximally entangled state have been measured out.
double effective_error_rate(double p_error, uint64_t n);

/// (1 - (1 - 2q)^m) / 2: probability of an odd number of flips among m
/// independent sites that each flip with probability q.
double odd_parity_rate(double q, uint64_t m);

/// Probability that a majority vote over k independent voters, each wrong
/// with probability p_single, is wrong. Even k adds the tie mass weighted by
/// `tie_rule`.
double majority_vote_error(double p_single, uint64_t k, TieRule tie_rule = TieRule::Random);

}  // namespace errtel::noise
