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

#include "frustbench/chimera.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace frustbench {

ChimeraGraph::ChimeraGraph(int L, std::span<const int> broken) : L_(L) {
    if (L < 1) throw std::invalid_argument("build_chimera: L must be >= 1");
    const int n = ideal_vertex_count();
    active_.assign(n, 1);
    for (int b : broken) {
        if (b < 0 || b >= n)
            throw std::invalid_argument("build_chimera: broken id " + std::to_string(b) + " out of range");
        active_[b] = 0;
    }
    for (int v = 0; v < n; ++v) {
        if (active_[v]) {
            vertices_.push_back(v);
            (in_partition_a(v) ? partition_a_ : partition_b_).push_back(v);
        } else {
            broken_.push_back(v);
        }
    }

    auto add = [&](int u, int v) {
        if (active_[u] && active_[v]) edges_.emplace_back(std::min(u, v), std::max(u, v));
    };
    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) {
            for (int i = 0; i < 4; ++i)
                for (int j = 4; j < 8; ++j) add(id({r, c, i}), id({r, c, j}));
            if (c + 1 < L)
                for (int i = 0; i < 4; ++i) add(id({r, c, i}), id({r, c + 1, i}));
            if (r + 1 < L)
                for (int j = 4; j < 8; ++j) add(id({r, c, j}), id({r + 1, c, j}));
        }
    }
    std::sort(edges_.begin(), edges_.end());

    std::vector<int> degree(n, 0);
    for (auto [u, v] : edges_) {
        ++degree[u];
        ++degree[v];
    }
    adj_offset_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) adj_offset_[v + 1] = adj_offset_[v] + degree[v];
    adj_.resize(adj_offset_[n]);
    adj_edge_.resize(adj_offset_[n]);
    std::vector<int> fill(adj_offset_.begin(), adj_offset_.end() - 1);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        auto [u, v] = edges_[e];
        adj_[fill[u]] = v;
        adj_edge_[fill[u]++] = e;
        adj_[fill[v]] = u;
        adj_edge_[fill[v]++] = e;
    }
    for (int v = 0; v < n; ++v) {
        // keep the two arrays aligned while sorting by neighbor id
        std::vector<std::pair<int, int>> tmp;
        for (int p = adj_offset_[v]; p < adj_offset_[v + 1]; ++p) tmp.emplace_back(adj_[p], adj_edge_[p]);
        std::sort(tmp.begin(), tmp.end());
        for (int p = adj_offset_[v], q = 0; p < adj_offset_[v + 1]; ++p, ++q) {
            adj_[p] = tmp[q].first;
            adj_edge_[p] = tmp[q].second;
        }
    }
}

bool ChimeraGraph::in_partition_a(int v) const {
    const auto c = coord(v);
    return ((c.k >= 4 ? 1 : 0) + c.row + c.col) % 2 == 0;
}

std::span<const int> ChimeraGraph::neighbors(int v) const {
    if (!is_active(v)) throw std::out_of_range("neighbors: vertex " + std::to_string(v) + " is broken or out of range");
    return {adj_.data() + adj_offset_[v], adj_.data() + adj_offset_[v + 1]};
}

std::span<const int> ChimeraGraph::incident_edges(int v) const {
    if (!is_active(v)) throw std::out_of_range("incident_edges: vertex " + std::to_string(v) + " is broken or out of range");
    return {adj_edge_.data() + adj_offset_[v], adj_edge_.data() + adj_offset_[v + 1]};
}

int ChimeraGraph::edge_index(int u, int v) const {
    if (!is_active(u) || !is_active(v)) return -1;
    for (int p = adj_offset_[u]; p < adj_offset_[u + 1]; ++p)
        if (adj_[p] == v) return adj_edge_[p];
    return -1;
}

ChimeraCoord ChimeraGraph::coord(int v) const {
    const int cell = v / 8;
    return {cell / L_, cell % L_, v % 8};
}

int ChimeraGraph::id(const ChimeraCoord& c) const { return 8 * (c.row * L_ + c.col) + c.k; }

ChimeraGraph ChimeraGraph::subgraph(int L_sub) const {
    if (L_sub < 1 || L_sub > L_) throw std::invalid_argument("subgraph: L_sub must be in [1, L]");
    std::vector<int> sub_broken;
    for (int b : broken_) {
        const auto c = coord(b);
        if (c.row < L_sub && c.col < L_sub) sub_broken.push_back(8 * (c.row * L_sub + c.col) + c.k);
    }
    std::sort(sub_broken.begin(), sub_broken.end());
    return ChimeraGraph(L_sub, sub_broken);
}

std::string ChimeraGraph::serialize() const {
    std::ostringstream out;
    out << "chimera L=" << L_ << "\nbroken:";
    for (int b : broken_) out << ' ' << b;
    out << '\n';
    for (auto [u, v] : edges_) out << "edge " << u << ' ' << v << '\n';
    return out.str();
}

ChimeraGraph ChimeraGraph::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int L = 0;
    if (!std::getline(in, line) || line.rfind("chimera L=", 0) != 0)
        throw std::invalid_argument("chimera file: expected 'chimera L=<int>' header");
    L = std::stoi(line.substr(10));
    if (!std::getline(in, line) || line.rfind("broken:", 0) != 0)
        throw std::invalid_argument("chimera file: expected 'broken:' line");
    std::vector<int> broken;
    {
        std::istringstream ids(line.substr(7));
        int b;
        while (ids >> b) broken.push_back(b);
    }
    ChimeraGraph g(L, broken);
    std::vector<Edge> listed;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        int u, v;
        if (!(ls >> tag >> u >> v) || tag != "edge") throw std::invalid_argument("chimera file: bad line '" + line + "'");
        listed.emplace_back(u, v);
    }
    if (!listed.empty() && listed != g.edges()) throw std::invalid_argument("chimera file: edge list does not match L and mask");
    return g;
}

ChimeraGraph load_chimera(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ChimeraGraph::parse(ss.str());
}

}  // namespace frustbench
