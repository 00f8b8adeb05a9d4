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
#include <stdexcept>
#include <string>

namespace errtel::noise {

namespace {

void require_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

/// log C(k, j) p^j (1-p)^(k-j), with the p in {0, 1} corner cases handled exactly.
double binomial_pmf(uint64_t k, uint64_t j, double p) {
    if (p == 0) {
        return j == 0 ? 1.0 : 0.0;
    }
    if (p == 1) {
        return j == k ? 1.0 : 0.0;
    }
    double log_choose = std::lgamma(static_cast<double>(k) + 1) - std::lgamma(static_cast<double>(j) + 1) -
                        std::lgamma(static_cast<double>(k - j) + 1);
    return std::exp(log_choose + static_cast<double>(j) * std::log(p) + static_cast<double>(k - j) * std::log1p(-p));
}

}  // namespace

void NoiseSpec::validate() const {
    require_probability(p_error, "p_error");
    require_probability(eps_loss, "eps_loss");
    if (!(p_gate > 0 && p_gate <= 1)) {
        throw std::invalid_argument("p_gate must lie in (0, 1], got " + std::to_string(p_gate));
    }
}

std::string_view tie_rule_name(TieRule rule) {
    switch (rule) {
        case TieRule::Optimistic:
            return "optimistic";
        case TieRule::Pessimistic:
            return "pessimistic";
        case TieRule::Random:
            return "random";
    }
    return "?";
}

std::optional<TieRule> parse_tie_rule(std::string_view text) {
    for (TieRule rule : {TieRule::Optimistic, TieRule::Pessimistic, TieRule::Random}) {
        if (text == tie_rule_name(rule)) {
            return rule;
        }
    }
    return std::nullopt;
}

double tie_weight(TieRule rule) {
    switch (rule) {
        case TieRule::Optimistic:
            return 0.0;
        case TieRule::Pessimistic:
            return 1.0;
        case TieRule::Random:
            return 0.5;
    }
    return 0.5;
}

Pauli sample_depolarizing(double p_error, Rng &rng) {
    require_probability(p_error, "p_error");
    double u = rng.uniform();
    double quarter = p_error / 4;
    if (u >= 3 * quarter) {
        return Pauli::I;
    }
    if (u < quarter) {
        return Pauli::X;
    }
    return u < 2 * quarter ? Pauli::Y : Pauli::Z;
}

double effective_error_rate(double p_error, uint64_t n) {
    require_probability(p_error, "p_error");
    if (n == 0) {
        return 0;
    }
    if (p_error == 1) {
        return 1;
    }
    return -std::expm1(static_cast<double>(n) * std::log1p(-p_error));
}

double odd_parity_rate(double q, uint64_t m) {
    require_probability(q, "q");
    double base = 1 - 2 * q;
    double power;
    if (m > 1000 && base != 0) {
        double magnitude = std::exp(static_cast<double>(m) * std::log(std::fabs(base)));
        power = (base < 0 && (m & 1)) ? -magnitude : magnitude;
    } else {
        power = std::pow(base, static_cast<double>(m));
    }
    return (1 - power) / 2;
}

double majority_vote_error(double p_single, uint64_t k, TieRule tie_rule) {
    require_probability(p_single, "p_single");
    if (k == 0) {
        throw std::invalid_argument("majority vote needs at least one voter");
    }
    double total = 0;
    for (uint64_t j = k / 2 + 1; j <= k; j++) {
        total += binomial_pmf(k, j, p_single);
    }
    if (k % 2 == 0) {
        total += tie_weight(tie_rule) * binomial_pmf(k, k / 2, p_single);
    }
    return total;
}

}  // namespace errtel::noise
