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

// Brute-force references shared by the unit and acceptance suites. They
// read couplings straight off the instance and never touch solver code.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "frustbench/instance.hpp"

namespace oracle {

struct Minimum {
    std::int64_t energy = std::numeric_limits<std::int64_t>::max();
    std::int64_t count = 0;  ///< minimizers over the scanned spins
};

/// Raw energy sum_e J_e s_u s_v straight from the edge list.
inline std::int64_t raw_energy(const frustbench::PlantedInstance& inst, const frustbench::SpinConfig& s) {
    std::int64_t e = 0;
    const auto& edges = inst.graph.edges();
    for (std::size_t k = 0; k < edges.size(); ++k)
        e += static_cast<std::int64_t>(inst.raw_couplings[k]) * s[edges[k].first] * s[edges[k].second];
    return e;
}

/// Exhaustive scan over `spins`; every other active vertex stays at +1.
inline Minimum scan(const frustbench::PlantedInstance& inst, const std::vector<int>& spins) {
    if (spins.size() > 26) throw std::invalid_argument("oracle::scan: too many spins");
    frustbench::SpinConfig s(inst.graph.ideal_vertex_count(), 0);
    for (int v : inst.graph.vertices()) s[v] = 1;
    Minimum m;
    const std::uint64_t total = std::uint64_t{1} << spins.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t i = 0; i < spins.size(); ++i) s[spins[i]] = (mask >> i) & 1 ? -1 : 1;
        const auto e = oracle::raw_energy(inst, s);
        if (e < m.energy) {
            m.energy = e;
            m.count = 0;
        }
        if (e == m.energy) ++m.count;
    }
    return m;
}

/// Vertices touched by a nonzero or clause edge, computed from the clauses.
inline std::vector<int> clause_vertices(const frustbench::PlantedInstance& inst) {
    std::vector<char> seen(inst.graph.ideal_vertex_count(), 0);
    for (const auto& c : inst.clauses)
        for (int v : c.path) seen[v] = 1;
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(seen.size()); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

}  // namespace oracle
