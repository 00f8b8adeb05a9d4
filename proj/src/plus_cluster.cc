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
#include <stdexcept>
#include <string>

#include "errtel/noise.h"

namespace errtel::plus {

std::string_view shape_name(Shape shape) {
    switch (shape) {
        case Shape::PlusA:
            return "PlusA";
        case Shape::DoubleB:
            return "DoubleB";
        case Shape::QuadC:
            return "QuadC";
    }
    return "?";
}

std::optional<Shape> parse_shape(std::string_view text) {
    for (Shape s : {Shape::PlusA, Shape::DoubleB, Shape::QuadC}) {
        if (text == shape_name(s)) {
            return s;
        }
    }
    return std::nullopt;
}

PlusCluster build_plus_cluster(const PlusClusterSpec &spec) {
    PlusCluster cluster;
    GraphTopology &g = cluster.topology;
    auto add_arm = [&](QubitId center) {
        std::vector<QubitId> arm;
        QubitId previous = center;
        for (uint32_t j = 0; j < spec.n_l; j++) {
            QubitId q = g.add_node("arm");
            g.add_edge(previous, q);
            arm.push_back(q);
            previous = q;
        }
        cluster.arms.push_back(std::move(arm));
        cluster.arm_owner.push_back(center);
    };

    size_t num_centers = spec.shape == Shape::PlusA ? 1 : spec.shape == Shape::DoubleB ? 2 : 4;
    for (size_t c = 0; c < num_centers; c++) {
        cluster.centers.push_back(g.add_node("central"));
    }
    const auto &c = cluster.centers;
    switch (spec.shape) {
        case Shape::PlusA:
            for (int k = 0; k < 4; k++) {
                add_arm(c[0]);
            }
            break;
        case Shape::DoubleB:
            g.add_edge(c[0], c[1]);
            for (QubitId center : c) {
                for (int k = 0; k < 3; k++) {
                    add_arm(center);
                }
            }
            break;
        case Shape::QuadC:
            // 2x2 block: c0 c1 on top, c2 c3 below.
            g.add_edge(c[0], c[1]);
            g.add_edge(c[1], c[3]);
            g.add_edge(c[3], c[2]);
            g.add_edge(c[2], c[0]);
            for (QubitId center : c) {
                add_arm(center);
                add_arm(center);
            }
            break;
    }
    return cluster;
}

uint64_t bond_count(const PlusClusterSpec &spec) {
    return build_plus_cluster(spec).topology.edge_count();
}

double single_shot_success(const PlusClusterSpec &spec, double p_gate) {
    return std::pow(p_gate, static_cast<double>(bond_count(spec)));
}

void single_shot_trial(uint64_t bonds, double p_gate, Rng &rng, Tally &tally) {
    bool all = true;
    for (uint64_t k = 0; k < bonds; k++) {
        // Keep drawing after a failure so every trial consumes the same stream.
        all &= rng.bernoulli(p_gate);
    }
    tally.denominator++;
    tally.hits += all;
}

BondingPair make_bonding_pair(const PlusCluster &a, size_t arm_a, const PlusCluster &b, size_t arm_b) {
    BondingPair pair;
    pair.topology = a.topology;
    QubitId offset = pair.topology.append(b.topology);
    pair.state = StabilizerTableau::graph_state(pair.topology);
    pair.center_a = a.arm_owner.at(arm_a);
    pair.center_b = b.arm_owner.at(arm_b) + offset;
    pair.arm_a = a.arms.at(arm_a);
    for (QubitId q : b.arms.at(arm_b)) {
        pair.arm_b.push_back(q + offset);
    }
    return pair;
}

BondResult attempt_bond(
    StabilizerTableau &state, std::vector<QubitId> &arm_a, std::vector<QubitId> &arm_b, double p_gate, Rng &rng) {
    if (arm_a.empty() || arm_b.empty()) {
        throw std::invalid_argument("attempt_bond: both arms need at least one qubit");
    }
    BondResult result;
    auto remove_end = [&](std::vector<QubitId> &arm) {
        uint32_t removed = 0;
        state.mark_lost(arm.back(), rng);
        arm.pop_back();
        removed++;
        if (!arm.empty()) {
            state.measure(arm.back(), Basis::Z, rng);
            arm.pop_back();
            removed++;
        }
        return removed;
    };
    while (!arm_a.empty() && !arm_b.empty()) {
        result.attempts_used++;
        if (rng.bernoulli(p_gate)) {
            state.apply_cz(arm_a.back(), arm_b.back());
            result.succeeded = true;
            break;
        }
        result.arm_qubits_consumed += remove_end(arm_a);
        remove_end(arm_b);
    }
    return result;
}

double bond_success_probability(uint32_t len_a, uint32_t len_b, double p_gate) {
    double total = 0;
    double reach = 1;  // probability that every earlier attempt failed
    while (len_a > 0 && len_b > 0) {
        total += reach * p_gate;
        reach *= 1 - p_gate;
        len_a -= std::min<uint32_t>(2, len_a);
        len_b -= std::min<uint32_t>(2, len_b);
    }
    return total;
}

std::vector<QubitId> interstitial_path(QubitId center_a, std::span<const QubitId> arm_a,
                                       std::span<const QubitId> arm_b, QubitId center_b) {
    std::vector<QubitId> path;
    path.reserve(arm_a.size() + arm_b.size() + 2);
    path.push_back(center_a);
    path.insert(path.end(), arm_a.begin(), arm_a.end());
    path.insert(path.end(), arm_b.rbegin(), arm_b.rend());
    path.push_back(center_b);
    return path;
}

uint32_t reduce_interstitial(StabilizerTableau &state, std::span<const QubitId> path, Rng &rng) {
    if (path.size() < 2) {
        throw std::invalid_argument("reduce_interstitial: path needs two end points");
    }
    auto interior = path.subspan(1, path.size() - 2);
    for (QubitId q : interior) {
        if (!state.status(q).active()) {
            throw std::invalid_argument("reduce_interstitial: path broken at qubit " + std::to_string(q));
        }
    }
    if (interior.size() % 2 != 0) {
        throw std::invalid_argument("reduce_interstitial: odd interstitial count leaves a rotated bond");
    }
    for (QubitId q : interior) {
        state.measure(q, Basis::X, rng);
    }
    return static_cast<uint32_t>(interior.size());
}

namespace {

bool generator_flipped(const StabilizerTableau &state, QubitId center, QubitId partner,
                       std::span<const QubitId> neighbors) {
    PauliString s(state.num_qubits());
    s.set(center, Pauli::X);
    s.set(partner, Pauli::Z);
    for (QubitId q : neighbors) {
        s.set(q, Pauli::Z);
    }
    std::optional<int> value = state.expectation(s);
    if (!value.has_value()) {
        throw std::logic_error("check_bond: central nodes are not bonded");
    }
    bool frame_flips = !state.pauli_frame().commutes(s);
    return (*value < 0) != frame_flips;
}

}  // namespace

BondCheck check_bond(const StabilizerTableau &state, QubitId center_a, std::span<const QubitId> neighbors_a,
                     QubitId center_b, std::span<const QubitId> neighbors_b) {
    return {generator_flipped(state, center_a, center_b, neighbors_a),
            generator_flipped(state, center_b, center_a, neighbors_b)};
}

NodeErrorExperiment::NodeErrorExperiment(uint32_t n_l) : n_l_(n_l), bonded_(0) {
    if (n_l == 0) {
        throw std::invalid_argument("node error experiment needs arms of length >= 1");
    }
    PlusCluster cluster = build_plus_cluster({n_l, Shape::PlusA});
    BondingPair pair = make_bonding_pair(cluster, 0, cluster, 0);
    // First attempt succeeds: bond the tips directly.
    pair.state.apply_cz(pair.arm_a.back(), pair.arm_b.back());
    bonded_ = std::move(pair.state);
    path_ = interstitial_path(pair.center_a, pair.arm_a, pair.arm_b, pair.center_b);
    QubitId offset = static_cast<QubitId>(cluster.topology.node_count());
    for (size_t k = 1; k < cluster.arms.size(); k++) {
        neighbors_a_.push_back(cluster.arms[k].front());
        neighbors_b_.push_back(cluster.arms[k].front() + offset);
    }
}

void NodeErrorExperiment::trial(double p_error, Rng &rng, Tally &tally) const {
    StabilizerTableau state = bonded_;
    for (size_t k = 1; k + 1 < path_.size(); k++) {
        Pauli e = noise::sample_depolarizing(p_error, rng);
        if (e != Pauli::I) {
            state.apply_pauli(path_[k], e);
        }
    }
    reduce_interstitial(state, path_, rng);
    BondCheck check = check_bond(state, path_.front(), neighbors_a_, path_.back(), neighbors_b_);
    tally.denominator++;
    tally.hits += check.parity_flipped();
}

Estimate effective_node_error(uint32_t n_l, double p_error, uint64_t trials, uint64_t seed, unsigned threads) {
    if (trials == 0) {
        throw std::invalid_argument("effective_node_error: trials must be >= 1");
    }
    NodeErrorExperiment experiment(n_l);
    Tally tally = run_trials(seed, 0, trials, threads, [&](Rng &rng, Tally &t) { experiment.trial(p_error, rng, t); });
    return estimate_from(tally);
}

double node_error_closed_form(uint32_t n_l, double p_error) {
    return noise::odd_parity_rate(p_error / 2, 2 * static_cast<uint64_t>(n_l));
}

std::vector<StrategyRow> compare_strategies(uint32_t n_l, double p_gate, double p_error) {
    std::vector<StrategyRow> rows;
    for (Shape shape : {Shape::PlusA, Shape::DoubleB, Shape::QuadC}) {
        StrategyRow row;
        row.shape = shape;
        row.bonds = bond_count({n_l, shape});
        row.single_shot_success = std::pow(p_gate, static_cast<double>(row.bonds));
        row.expected_clusters_per_node = 1 / row.single_shot_success;
        row.p_eff = shape == Shape::PlusA ? node_error_closed_form(n_l, p_error) : p_error;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace errtel::plus
