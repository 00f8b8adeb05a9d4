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

#include "errtel/graph_topology.h"

#include <stdexcept>

namespace errtel {

GraphTopology::GraphTopology(size_t node_count) : adjacency_(node_count), labels_(node_count) {
}

GraphTopology::GraphTopology(size_t node_count, const std::vector<std::pair<QubitId, QubitId>> &edges)
    : GraphTopology(node_count) {
    for (auto [a, b] : edges) {
        add_edge(a, b);
    }
}

GraphTopology GraphTopology::path(size_t node_count) {
    GraphTopology g(node_count);
    for (QubitId k = 1; k < node_count; k++) {
        g.add_edge(k - 1, k);
    }
    return g;
}

GraphTopology GraphTopology::star(size_t node_count) {
    GraphTopology g(node_count);
    for (QubitId k = 1; k < node_count; k++) {
        g.add_edge(0, k);
    }
    return g;
}

bool GraphTopology::has_edge(QubitId a, QubitId b) const {
    if (a > b) {
        std::swap(a, b);
    }
    return edges_.contains({a, b});
}

void GraphTopology::add_edge(QubitId a, QubitId b) {
    if (a == b) {
        throw std::invalid_argument("self-loop on node " + std::to_string(a));
    }
    if (a >= node_count() || b >= node_count()) {
        throw std::invalid_argument(
            "edge (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range for " +
            std::to_string(node_count()) + " nodes");
    }
    if (a > b) {
        std::swap(a, b);
    }
    if (!edges_.insert({a, b}).second) {
        throw std::invalid_argument("duplicate edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
}

QubitId GraphTopology::add_node(std::string label) {
    adjacency_.emplace_back();
    labels_.push_back(std::move(label));
    return static_cast<QubitId>(adjacency_.size() - 1);
}

void GraphTopology::set_label(QubitId node, std::string label) {
    labels_.at(node) = std::move(label);
}

QubitId GraphTopology::append(const GraphTopology &other) {
    auto offset = static_cast<QubitId>(node_count());
    for (QubitId k = 0; k < other.node_count(); k++) {
        add_node(other.label(k));
    }
    for (auto [a, b] : other.edges()) {
        add_edge(a + offset, b + offset);
    }
    return offset;
}

}  // namespace errtel
