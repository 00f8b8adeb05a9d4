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

#include "gtest/gtest.h"

using namespace errtel;

TEST(graph_topology, path_and_star) {
    GraphTopology p = GraphTopology::path(4);
    ASSERT_EQ(p.node_count(), 4u);
    ASSERT_EQ(p.edge_count(), 3u);
    ASSERT_TRUE(p.has_edge(2, 1));
    ASSERT_FALSE(p.has_edge(0, 2));

    GraphTopology s = GraphTopology::star(5);
    ASSERT_EQ(s.edge_count(), 4u);
    ASSERT_EQ(s.neighbors(0).size(), 4u);
    ASSERT_EQ(s.neighbors(3).size(), 1u);
}

TEST(graph_topology, rejects_bad_edges) {
    GraphTopology g(3);
    g.add_edge(0, 1);
    ASSERT_THROW(g.add_edge(1, 0), std::invalid_argument);
    ASSERT_THROW(g.add_edge(2, 2), std::invalid_argument);
    ASSERT_THROW(g.add_edge(0, 3), std::invalid_argument);
}

TEST(graph_topology, append_offsets_nodes) {
    GraphTopology a = GraphTopology::path(2);
    GraphTopology b = GraphTopology::path(3);
    b.set_label(0, "end");
    QubitId offset = a.append(b);
    ASSERT_EQ(offset, 2u);
    ASSERT_EQ(a.node_count(), 5u);
    ASSERT_EQ(a.edge_count(), 3u);
    ASSERT_TRUE(a.has_edge(3, 4));
    ASSERT_EQ(a.label(2), "end");
    QubitId extra = a.add_node("x");
    ASSERT_EQ(extra, 5u);
    ASSERT_EQ(a.label(extra), "x");
}
