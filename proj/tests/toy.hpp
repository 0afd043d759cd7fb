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

// Hand-built Ising systems outside the Chimera/planted pipeline.

#pragma once

#include <vector>

#include "frustbench/instance.hpp"

namespace toy {

/// n free spins, integer couplings on `edges`, every spin active, scale 1.
inline frustbench::IsingInstance ising(int n, const std::vector<frustbench::Edge>& edges, const std::vector<int>& J,
                                       std::int64_t ground_raw) {
    frustbench::IsingInstance t;
    t.L = 1;
    t.n = n;
    for (int v = 0; v < n; ++v) {
        t.active.push_back(v);
        t.sweep_order.push_back(v);
    }
    t.edges = edges;
    t.raw = J;
    for (int j : J) t.weights.push_back(j);
    t.nbr_offset.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) {
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (edges[k].first == v || edges[k].second == v) {
                t.nbr.push_back(edges[k].first == v ? edges[k].second : edges[k].first);
                t.nbr_weight.push_back(J[k]);
                t.nbr_raw.push_back(J[k]);
            }
        }
        t.nbr_offset[v + 1] = static_cast<int>(t.nbr.size());
    }
    t.scale_factor = 1;
    t.ground_raw = ground_raw;
    return t;
}

}  // namespace toy
