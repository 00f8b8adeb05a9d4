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

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errtel/pauli_string.h"

namespace errtel {

/// Undirected simple graph describing a cluster shape, with optional
/// per-node role labels ("central", "arm", "root", "level-2", ...).
class GraphTopology {
   public:
    GraphTopology() = default;
    explicit GraphTopology(size_t node_count);
    /// Throws std::invalid_argument on a self-loop, duplicate edge or out-of-range endpoint.
    GraphTopology(size_t node_count, const std::vector<std::pair<QubitId, QubitId>> &edges);

    static GraphTopology path(size_t node_count);
    static GraphTopology star(size_t node_count);

    size_t node_count() const {
        return adjacency_.size();
    }
    size_t edge_count() const {
        return edges_.size();
    }
    /// Edges stored with first < second, sorted.
    const std::set<std::pair<QubitId, QubitId>> &edges() const {
        return edges_;
    }
    const std::vector<QubitId> &neighbors(QubitId node) const {
        return adjacency_.at(node);
    }
    bool has_edge(QubitId a, QubitId b) const;

    void add_edge(QubitId a, QubitId b);
    /// Appends a fresh node and returns its id.
    QubitId add_node(std::string label = {});

    const std::string &label(QubitId node) const {
        return labels_.at(node);
    }
    void set_label(QubitId node, std::string label);

    /// Places `other` after this graph's nodes. Returns the id offset of `other`.
    QubitId append(const GraphTopology &other);

   private:
    std::vector<std::vector<QubitId>> adjacency_;
    std::set<std::pair<QubitId, QubitId>> edges_;
    std::vector<std::string> labels_;
};

}  // namespace errtel
