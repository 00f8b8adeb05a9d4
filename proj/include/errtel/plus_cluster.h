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
#include <span>
#include <string_view>
#include <vector>

#include "errtel/graph_topology.h"
#include "errtel/stabilizer_tableau.h"
#include "errtel/stats.h"

namespace errtel::plus {

/// Resource shapes: (a) one central node with four arms, (b) two bonded
/// central nodes with three arms each, (c) four central nodes bonded in a
/// square with two arms each.
enum class Shape : uint8_t { PlusA, DoubleB, QuadC };

std::string_view shape_name(Shape shape);
std::optional<Shape> parse_shape(std::string_view text);

struct PlusClusterSpec {
    /// Qubits per arm.
    uint32_t n_l = 0;
    Shape shape = Shape::PlusA;
};

/// A resource cluster's graph plus where its central nodes and arms live.
struct PlusCluster {
    GraphTopology topology;
    std::vector<QubitId> centers;
    /// Each arm runs outward: arms[k][0] is adjacent to its central node.
    std::vector<std::vector<QubitId>> arms;
    /// arm_owner[k] is the central node arm k hangs off.
    std::vector<QubitId> arm_owner;
};

PlusCluster build_plus_cluster(const PlusClusterSpec &spec);

/// Number of entangling bonds in the shape's graph.
uint64_t bond_count(const PlusClusterSpec &spec);

/// Probability that preparing the whole resource in one shot succeeds:
/// p_gate raised to the bond count.
double single_shot_success(const PlusClusterSpec &spec, double p_gate);

/// One Monte Carlo preparation of a resource with `bonds` bonds: samples
/// every bond gate, hit iff all succeed.
void single_shot_trial(uint64_t bonds, double p_gate, Rng &rng, Tally &tally);

struct BondResult {
    bool succeeded = false;
    uint32_t attempts_used = 0;
    /// Qubits removed from arm A (arm B loses the same number while both last).
    uint32_t arm_qubits_consumed = 0;
    uint32_t interstitial_qubits_measured = 0;
    /// Monte Carlo only: the node correction parity disagrees with the reference.
    bool error_on_node = false;
};

/// Two clusters placed side by side in one tableau, with the arms chosen for bonding.
struct BondingPair {
    GraphTopology topology;
    StabilizerTableau state{0};
    QubitId center_a = 0;
    QubitId center_b = 0;
    std::vector<QubitId> arm_a;
    std::vector<QubitId> arm_b;
};

BondingPair make_bonding_pair(const PlusCluster &a, size_t arm_a, const PlusCluster &b, size_t arm_b);

/// Repeated bonding attempts between the arm tips.
///
/// Each attempt succeeds with probability p_gate and then applies CZ between
/// the tips. A failure destroys both tips (heralded loss) and the new end
/// qubits are Z-measured to cut the lost ones away, so every failure costs
/// two qubits per arm. Stops on success or when an arm runs out. The arm
/// vectors shrink to the qubits still attached.
BondResult attempt_bond(
    StabilizerTableau &state, std::vector<QubitId> &arm_a, std::vector<QubitId> &arm_b, double p_gate, Rng &rng);

/// Exact probability that attempt_bond succeeds for arms of the given lengths.
double bond_success_probability(uint32_t len_a, uint32_t len_b, double p_gate);

/// The path between two bonded central nodes: center_a, the leftover arm
/// qubits of A outward, those of B inward, center_b.
std::vector<QubitId> interstitial_path(QubitId center_a, std::span<const QubitId> arm_a,
                                       std::span<const QubitId> arm_b, QubitId center_b);

/// X-measures the interior of `path` so its two ends become directly bonded
/// (up to the Pauli frame). Throws if an interior qubit is not active or the
/// interior has odd length, which would leave a locally rotated bond.
/// Returns the number of qubits measured.
uint32_t reduce_interstitial(StabilizerTableau &state, std::span<const QubitId> path, Rng &rng);

/// Signs of the two bond generators S_a, S_b of the reduced graph, read from
/// `state` and corrected by its Pauli frame. `neighbors_*` are the remaining
/// graph neighbours of each central node other than the partner.
struct BondCheck {
    bool flip_a = false;
    bool flip_b = false;
    /// Odd total number of flipped byproducts across the bond.
    bool parity_flipped() const {
        return flip_a != flip_b;
    }
};
BondCheck check_bond(const StabilizerTableau &state, QubitId center_a, std::span<const QubitId> neighbors_a,
                     QubitId center_b, std::span<const QubitId> neighbors_b);

/// Precomputed two-PlusA setup whose first bonding attempt succeeded, used by
/// the node-error Monte Carlo.
class NodeErrorExperiment {
   public:
    explicit NodeErrorExperiment(uint32_t n_l);

    uint32_t n_l() const {
        return n_l_;
    }
    /// One trial: depolarize every interstitial qubit with `p_error`, reduce,
    /// and count a hit when the node correction parity is wrong.
    void trial(double p_error, Rng &rng, Tally &tally) const;

   private:
    uint32_t n_l_;
    StabilizerTableau bonded_;
    std::vector<QubitId> path_;
    std::vector<QubitId> neighbors_a_;
    std::vector<QubitId> neighbors_b_;
};

/// Monte Carlo estimate of the node error after reducing 2 n_l interstitial
/// qubits, with trial i seeded by derive_seed(seed, i).
Estimate effective_node_error(uint32_t n_l, double p_error, uint64_t trials, uint64_t seed, unsigned threads = 1);

/// Closed form of the same quantity: only the phase-flip part (Y or Z, total
/// probability p/2) of each interstitial qubit's depolarizing error flips its
/// X outcome, so the node parity is wrong with odd_parity_rate(p/2, 2 n_l).
double node_error_closed_form(uint32_t n_l, double p_error);

struct StrategyRow {
    Shape shape = Shape::PlusA;
    uint64_t bonds = 0;
    double single_shot_success = 0;
    /// Expected single-shot preparations per usable resource cluster (1 / success).
    double expected_clusters_per_node = 0;
    /// Error rate of a lattice node built from this resource.
    double p_eff = 0;
};

/// Single-shot vs divide-and-conquer: PlusA resources must be fused, which
/// measures out 2 n_l interstitial qubits per node; larger resources prepared
/// in one shot skip that step and keep the physical rate.
std::vector<StrategyRow> compare_strategies(uint32_t n_l, double p_gate, double p_error);

}  // namespace errtel::plus
