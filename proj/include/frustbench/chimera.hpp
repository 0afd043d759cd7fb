// Copyright 2026 The frustbench Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frustbench {

/// Position of a qubit on the Chimera lattice. k in [0,4) is the horizontal
/// half of the unit cell, k in [4,8) the vertical half.
struct ChimeraCoord {
    int row = 0;
    int col = 0;
    int k = 0;
    friend bool operator==(const ChimeraCoord&, const ChimeraCoord&) = default;
    friend auto operator<=>(const ChimeraCoord&, const ChimeraCoord&) = default;
};

/// Undirected edge stored with first < second.
using Edge = std::pair<int, int>;

/// L x L block of K_{4,4} unit cells with a broken-vertex mask.
///
/// Ids are cell-major and row-major: id = 8 * (row * L + col) + k. Horizontal
/// couplers join qubit k (k < 4) of cells (r, c) and (r, c + 1); vertical
/// couplers join qubit k (k >= 4) of cells (r, c) and (r + 1, c).
///
/// partition_a holds vertices with (half + row + col) even, partition_b the
/// rest; every edge joins the two, so each half can be swept in parallel.
/// Immutable after construction.
class ChimeraGraph {
  public:
    /// Throws std::invalid_argument on L < 1 or a broken id outside [0, 8L^2).
    ChimeraGraph(int L, std::span<const int> broken);

    int L() const { return L_; }
    int ideal_vertex_count() const { return 8 * L_ * L_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& broken() const { return broken_; }
    const std::vector<int>& partition_a() const { return partition_a_; }
    const std::vector<int>& partition_b() const { return partition_b_; }

    bool is_active(int v) const { return v >= 0 && v < ideal_vertex_count() && active_[v]; }
    bool in_partition_a(int v) const;

    /// Ascending neighbor ids. Throws std::out_of_range for broken or out-of-range v.
    std::span<const int> neighbors(int v) const;
    /// Edge indices (into edges()) parallel to neighbors(v).
    std::span<const int> incident_edges(int v) const;
    /// Index into edges() or -1 when {u, v} is not an edge.
    int edge_index(int u, int v) const;

    ChimeraCoord coord(int v) const;
    int id(const ChimeraCoord& c) const;

    /// Top-left L_sub x L_sub block, renumbered into the L_sub id space.
    ChimeraGraph subgraph(int L_sub) const;

    /// Text record: "chimera L=<L>", "broken: ids...", then "edge u v" lines.
    std::string serialize() const;
    /// Parses serialize() output. Edge lines are optional but, when present,
    /// must match the reconstructed graph exactly.
    static ChimeraGraph parse(std::string_view text);

  private:
    int L_;
    std::vector<char> active_;
    std::vector<int> vertices_;
    std::vector<int> broken_;
    std::vector<Edge> edges_;
    std::vector<int> partition_a_;
    std::vector<int> partition_b_;
    std::vector<int> adj_offset_;
    std::vector<int> adj_;
    std::vector<int> adj_edge_;
};

inline ChimeraGraph build_chimera(int L, std::span<const int> broken = {}) { return ChimeraGraph(L, broken); }

/// Reads a graph/mask file from disk (see ChimeraGraph::parse).
ChimeraGraph load_chimera(const std::string& path);

}  // namespace frustbench
