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
#include <string>
#include <string_view>
#include <vector>

#include "errtel/graph_topology.h"
#include "errtel/noise.h"
#include "errtel/stabilizer_tableau.h"
#include "errtel/stats.h"
#include "errtel/sweep_harness.h"

namespace errtel::tree {

/// Branching parameters (b_1, ..., b_d) of a tree cluster: the root has b_1
/// children, each level-1 qubit b_2 children, and so on.
struct TreeSpec {
    std::vector<uint32_t> branching;

    size_t depth() const {
        return branching.size();
    }
    /// 1 + sum_k prod_{j <= k} b_j.
    uint64_t qubit_count() const;
    /// Throws std::invalid_argument unless depth >= 1 and every b_k >= 1.
    void validate() const;
    /// "3,3"
    std::string str() const;
    /// Parses "3,3". Throws std::invalid_argument on malformed input.
    static TreeSpec parse(std::string_view text);

    bool operator==(const TreeSpec &) const = default;
};

/// A tree graph state. Qubits are numbered breadth first: the root is 0,
/// level-1 qubits follow, and children of one parent are contiguous.
struct TreeCluster {
    TreeSpec spec;
    GraphTopology topology;
    StabilizerTableau state{0};
    std::vector<uint32_t> level;
    std::vector<std::vector<QubitId>> children;
};

TreeCluster build_tree(const TreeSpec &spec);

/// Basis the indirect measurement uses on a qubit of the given level: X on
/// odd levels, Z on even ones.
Basis planned_basis(uint32_t level);

/// How a per-qubit error rate p turns into flipped outcomes.
enum class FlipConvention : uint8_t {
    /// Each measured outcome flips with probability p.
    OutcomeFlip,
    /// Each qubit suffers the depolarizing channel with rate p, which flips
    /// an X or Z outcome with probability p/2.
    Channel,
};
std::string_view flip_convention_name(FlipConvention convention);
std::optional<FlipConvention> parse_flip_convention(std::string_view text);

enum class Mode : uint8_t { FirstSuccess, Majority };

/// Everything random about one trial, drawn up front so the tableau and the
/// parity paths can be run on identical samples.
struct TrialSample {
    /// lost[0] is always set: the root is the qubit being recovered.
    std::vector<uint8_t> lost;
    /// Pauli error on each qubit, applied after preparation.
    std::vector<Pauli> error;
    /// Resolves a tied vote under TieRule::Random: true keeps the correct value.
    bool tie_coin = false;
};

/// Draws losses with probability eps_loss on every non-root qubit, errors
/// per `convention`, and the tie coin, in a fixed order.
TrialSample sample_trial(const TreeCluster &tree, double eps_loss, double p_error, FlipConvention convention,
                         Rng &rng);

/// Loss-only sample (no errors).
TrialSample sample_losses(const TreeCluster &tree, double eps_loss, Rng &rng);

struct IndirectResult {
    bool succeeded = false;
    /// Inferred Z value of the root, +1 or -1 (meaningful when succeeded).
    int inferred_value = +1;
    /// Top-level branches whose outcomes were used.
    uint32_t branches_used = 0;
    uint32_t qubits_measured = 0;
    /// Per-branch inferred values in branch order (majority mode only).
    std::vector<int> votes;
};

/// Indirect Z measurement of the root of `tree.state`.
///
/// The root is treated as lost by the protocol but stays active in the
/// tableau, where it serves as the hidden reference for scoring and for the
/// optimistic and pessimistic tie rules. Losses in `lost` must already be
/// applied to the state (StabilizerTableau::mark_lost).
///
/// A branch through level-1 qubit c is workable when c survived and every
/// child g of c either survived or can itself be recovered through one of
/// its own workable branches. The branch value is X(c) times Z of every
/// child, a recovered child contributing X(c') times Z of the children of c'.
/// First-success mode uses the first workable branch in child order;
/// majority mode votes over every workable branch, breaking ties by
/// `tie_rule` (`tie_coin` decides random ties). Throws std::invalid_argument
/// if lost[0] is not set.
IndirectResult indirect_measure_z(TreeCluster &tree, const std::vector<uint8_t> &lost, Mode mode,
                                  noise::TieRule tie_rule, bool tie_coin, Rng &rng);

struct TrialOutcome {
    IndirectResult result;
    /// Z of the root measured after the protocol.
    int truth = +1;
    bool wrong() const {
        return result.succeeded && result.inferred_value != truth;
    }
};

/// Full tableau trial: copies the prepared state, applies the sampled errors,
/// applies the losses, runs the indirect measurement and finally measures the root.
TrialOutcome tableau_trial(const TreeCluster &tree, const TrialSample &sample, Mode mode, noise::TieRule tie_rule,
                           Rng &rng);

/// The same trial with parity bookkeeping only: an outcome is flipped iff
/// its qubit's error anticommutes with the planned basis. Returned values are
/// relative to the truth (+1 = correct), so this matches tableau_trial up to
/// multiplication by the root outcome.
IndirectResult parity_trial(const TreeCluster &tree, const TrialSample &sample, Mode mode, noise::TieRule tie_rule);

/// Probability that a lost root cannot be recovered by indirect measurement.
/// Level by level: a lost level-k qubit is recovered with probability
/// R(k) = 1 - (1 - B(k+1))^b_{k+1}, where a branch headed at level j is
/// workable with probability B(j) = (1 - eps) ((1 - eps) + eps R(j+1))^b_{j+1},
/// and leaves cannot be recovered. Returns 1 - R(0).
double effective_loss_rate(const TreeSpec &spec, double eps_loss);

/// Monte Carlo counterpart of effective_loss_rate.
Estimate effective_loss_rate_mc(const TreeSpec &spec, double eps_loss, uint64_t trials, uint64_t seed,
                                unsigned threads = 1);

struct ErrorOptions {
    noise::TieRule tie_rule = noise::TieRule::Optimistic;
    FlipConvention convention = FlipConvention::OutcomeFlip;
    /// Run every trial through the tableau instead of the parity bookkeeping.
    bool use_tableau = false;
    unsigned threads = 1;
};

/// Per-branch error and voting statistics behind the analytic error rate.
struct BranchStats {
    /// Probability that a top-level branch is workable.
    double workable = 0;
    /// Error probability of a workable branch's value.
    double p_single = 0;
};
BranchStats branch_stats(const TreeSpec &spec, double eps_loss, double flip_probability);

/// Error rate of the recovered root value, conditioned on recovery
/// succeeding. Without voting this is the error of a single branch; with
/// voting the number of voters is binomial in the top-level branches.
/// NaN when recovery never succeeds.
double effective_error_rate_analytic(const TreeSpec &spec, double eps_loss, double p_error, bool vote,
                                     const ErrorOptions &options = {});

/// One Monte Carlo trial of the error experiment. Counts the trial in the
/// denominator only if recovery succeeds; aux accumulates the voters.
void error_trial(const TreeCluster &tree, double eps_loss, double p_error, bool vote, const ErrorOptions &options,
                 Rng &rng, Tally &tally);

/// Monte Carlo error rate of the recovered root value, conditioned on success.
Estimate effective_error_rate(const TreeSpec &spec, double eps_loss, double p_error, bool vote, uint64_t trials,
                              uint64_t seed, const ErrorOptions &options = {});

/// Loss rate below which the voted error rate does not exceed p_error, by
/// Monte Carlo bisection on [lo, hi]. Throws std::runtime_error if not bracketed.
ThresholdResult break_even_loss(const TreeSpec &spec, double p_error, uint64_t seed,
                                const ThresholdOptions &threshold_options, const ErrorOptions &options = {},
                                double lo = 0.0, double hi = 0.3);

/// Noise-free counterpart using the analytic error rate.
ThresholdResult break_even_loss_analytic(const TreeSpec &spec, double p_error, const ErrorOptions &options = {},
                                         double lo = 0.0, double hi = 0.3, double tol = 1e-6);

/// Rough estimate for a tree whose indirect measurement touches half of its
/// Q qubits, each outcome flipping with probability p_error:
/// odd_parity_rate(p_error, Q / 2). Throws if Q < 2.
double half_tree_error_estimate(uint64_t q, double p_error);

struct SearchOptions {
    uint32_t max_depth = 2;
    uint64_t max_qubits = 13;
    double eps_loss = 0;
    double p_error = 0;
    noise::TieRule tie_rule = noise::TieRule::Optimistic;
    FlipConvention convention = FlipConvention::OutcomeFlip;
    /// When set, rank by w[0] eps_eff + w[1] p_eff + w[2] Q instead of
    /// lexicographically by (eps_eff, p_eff, Q).
    std::optional<std::vector<double>> weights;
};

struct SearchEntry {
    TreeSpec spec;
    uint64_t qubits = 0;
    double eps_eff = 0;
    /// Voted error rate; NaN if recovery never succeeds.
    double p_eff_vote = 0;
    double score = 0;
};

/// Every branching vector with depth <= max_depth and Q <= max_qubits, best
/// first. Throws std::invalid_argument if the search space is empty.
std::vector<SearchEntry> search_branching(const SearchOptions &options);

}  // namespace errtel::tree
