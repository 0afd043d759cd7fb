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

#include "frustbench/hfs.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "frustbench/annealers.hpp"
#include "json.hpp"

namespace frustbench {

namespace {

int spin_of(int state, int bit) { return (state >> bit) & 1 ? 1 : -1; }

}  // namespace

double SuperGraph::energy(const std::vector<int>& states) const {
    double e = 0;
    for (int v : vertices) e += internal[v][states[v]];
    for (const auto& ed : edges) e += ed.table[16 * states[ed.a] + states[ed.b]];
    return e;
}

SuperGraph condense(const IsingInstance& inst) {
    SuperGraph sg;
    sg.L = inst.L;
    const int slots = 2 * inst.L * inst.L;
    sg.present.assign(slots, 0);
    sg.qubit_mask.assign(slots, 0);
    sg.internal.assign(slots, {});
    sg.adj.assign(slots, {});
    sg.exact = !inst.noisy;
    sg.energy_unit = inst.noisy ? 1.0 : 1.0 / inst.scale_factor;
    for (int v : inst.active) {
        sg.present[v / 4] = 1;
        sg.qubit_mask[v / 4] |= static_cast<std::uint8_t>(1u << (v % 4));
    }
    for (int s = 0; s < slots; ++s)
        if (sg.present[s]) sg.vertices.push_back(s);

    std::map<std::pair<int, int>, int> index;
    for (std::size_t k = 0; k < inst.edges.size(); ++k) {
        auto [u, v] = inst.edges[k];
        const int a = u / 4, b = v / 4;
        const double j = inst.noisy ? inst.weights[k] : static_cast<double>(inst.raw[k]);
        if (a == b) {
            // halves have no internal couplers on Chimera, kept for generality
            for (int s = 0; s < 16; ++s) sg.internal[a][s] += j * spin_of(s, u % 4) * spin_of(s, v % 4);
            continue;
        }
        auto key = std::minmax(a, b);
        auto [it, fresh] = index.try_emplace({key.first, key.second}, static_cast<int>(sg.edges.size()));
        if (fresh) {
            sg.edges.push_back({key.first, key.second, {}});
        }
        auto& ed = sg.edges[it->second];
        const int qa = (ed.a == a ? u : v) % 4;
        const int qb = (ed.a == a ? v : u) % 4;
        for (int sa = 0; sa < 16; ++sa)
            for (int sb = 0; sb < 16; ++sb) ed.table[16 * sa + sb] += j * spin_of(sa, qa) * spin_of(sb, qb);
    }
    for (int e = 0; e < static_cast<int>(sg.edges.size()); ++e) {
        const auto& ed = sg.edges[e];
        if (!sg.present[ed.a] || !sg.present[ed.b]) throw std::logic_error("condense: edge touches an absent half");
        sg.adj[ed.a].emplace_back(ed.b, e);
        sg.adj[ed.b].emplace_back(ed.a, e);
    }
    for (auto& a : sg.adj) std::sort(a.begin(), a.end());
    return sg;
}

SuperGraph condense(const PlantedInstance& inst) { return condense(to_ising(inst)); }

std::vector<int> states_from_spins(const SuperGraph& sg, const SpinConfig& s) {
    std::vector<int> states(sg.slot_count(), 0);
    for (int v = 0; v < static_cast<int>(s.size()); ++v)
        if (s[v] == 1) states[v / 4] |= 1 << (v % 4);
    return states;
}

SpinConfig spins_from_states(const SuperGraph& sg, const std::vector<int>& states) {
    SpinConfig s(4 * sg.slot_count(), 0);
    for (int sv : sg.vertices)
        for (int i = 0; i < 4; ++i)
            if (sg.qubit_mask[sv] >> i & 1) s[4 * sv + i] = static_cast<std::int8_t>(spin_of(states[sv], i));
    return s;
}

bool is_induced_tree(const SuperGraph& sg, const std::vector<int>& members) {
    if (members.empty()) return false;
    std::vector<char> in(sg.slot_count(), 0);
    for (int v : members) {
        if (v < 0 || v >= sg.slot_count() || !sg.present[v] || in[v]) return false;
        in[v] = 1;
    }
    std::size_t induced_edges = 0;
    for (const auto& ed : sg.edges)
        if (in[ed.a] && in[ed.b]) ++induced_edges;
    if (induced_edges + 1 != members.size()) return false;
    // connected?
    std::vector<char> seen(sg.slot_count(), 0);
    std::vector<int> stack{members.front()};
    seen[members.front()] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++reached;
        for (auto [u, e] : sg.adj[v])
            if (in[u] && !seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    return reached == members.size();
}

bool is_maximal_induced_tree(const SuperGraph& sg, const std::vector<int>& members) {
    if (!is_induced_tree(sg, members)) return false;
    std::vector<char> in(sg.slot_count(), 0);
    for (int v : members) in[v] = 1;
    for (int v : sg.vertices) {
        if (in[v]) continue;
        int k = 0;
        for (auto [u, e] : sg.adj[v]) k += in[u];
        if (k == 1) return false;
    }
    return true;
}

namespace {

/// Greedy induced-tree growth. pick(candidates) returns the index of the
/// candidate to add next.
template <class Pick>
InducedTree grow_tree(const SuperGraph& sg, int root, int max_size, Pick&& pick) {
    const int slots = sg.slot_count();
    std::vector<char> in(slots, 0);
    std::vector<int> tree_nbrs(slots, 0);
    std::vector<int> cand;
    std::vector<int> cand_pos(slots, -1);
    std::vector<int> member_index(slots, -1);
    InducedTree t;

    auto add_candidate = [&](int v) {
        cand_pos[v] = static_cast<int>(cand.size());
        cand.push_back(v);
    };
    auto drop_candidate = [&](int v) {
        const int p = cand_pos[v];
        cand[p] = cand.back();
        cand_pos[cand[p]] = p;
        cand.pop_back();
        cand_pos[v] = -1;
    };
    auto insert = [&](int v, int parent_member) {
        in[v] = 1;
        member_index[v] = static_cast<int>(t.members.size());
        t.members.push_back(v);
        t.parent.push_back(parent_member);
        for (auto [u, e] : sg.adj[v]) {
            if (in[u]) continue;
            const int k = ++tree_nbrs[u];
            if (k == 1) add_candidate(u);
            else if (k == 2) drop_candidate(u);
        }
    };

    insert(root, -1);
    while (!cand.empty() && (max_size <= 0 || static_cast<int>(t.members.size()) < max_size)) {
        const int v = cand[pick(cand)];
        drop_candidate(v);
        int parent = -1;
        for (auto [u, e] : sg.adj[v])
            if (in[u]) parent = member_index[u];
        insert(v, parent);
    }
    return t;
}

}  // namespace

InducedTree sample_induced_tree(const SuperGraph& sg, Rng& rng, int max_size) {
    if (sg.vertices.empty()) throw std::invalid_argument("sample_induced_tree: empty supergraph");
    const int root = sg.vertices[rng.below(sg.vertices.size())];
    return grow_tree(sg, root, max_size, [&](const std::vector<int>& c) { return rng.below(c.size()); });
}

InducedTree comb_tree(const SuperGraph& sg, int spine, bool transposed) {
    if (sg.vertices.empty()) throw std::invalid_argument("comb_tree: empty supergraph");
    const int L = sg.L;
    spine = ((spine % L) + L) % L;
    // 0 = spine, 1 = tooth, 2 = filler
    auto rank = [&](int sv) {
        const int cell = sv / 2, half = sv % 2;
        const int row = cell / L, col = cell % L;
        const bool spine_half = transposed ? half == 0 : half == 1;
        const bool on_spine = transposed ? row == spine : col == spine;
        if (spine_half && on_spine) return 0;
        return spine_half ? 2 : 1;
    };
    int root = -1;
    for (int sv : sg.vertices)
        if (rank(sv) == 0) {
            root = sv;
            break;
        }
    if (root < 0) root = sg.vertices.front();
    return grow_tree(sg, root, 0, [&](const std::vector<int>& c) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < c.size(); ++i) {
            const auto ki = std::pair(rank(c[i]), c[i]);
            const auto kb = std::pair(rank(c[best]), c[best]);
            if (ki < kb) best = i;
        }
        return best;
    });
}

double conditional_energy(const SuperGraph& sg, const std::vector<char>& in_tree, const std::vector<int>& states) {
    double e = 0;
    for (int v : sg.vertices)
        if (in_tree[v]) e += sg.internal[v][states[v]];
    for (const auto& ed : sg.edges)
        if (in_tree[ed.a] || in_tree[ed.b]) e += ed.table[16 * states[ed.a] + states[ed.b]];
    return e;
}

TreeMinimum tree_minimize(const SuperGraph& sg, const InducedTree& tree, const std::vector<int>& states) {
    const int slots = sg.slot_count();
    if (static_cast<int>(states.size()) != slots) throw std::invalid_argument("tree_minimize: state vector size");
    std::vector<int> pos(slots, -1);
    for (std::size_t i = 0; i < tree.members.size(); ++i) pos[tree.members[i]] = static_cast<int>(i);
    for (int v : sg.vertices)
        if (pos[v] < 0 && (states[v] < 0 || states[v] >= 16))
            throw std::invalid_argument("tree_minimize: supervertex " + std::to_string(v) + " has no state");

    const std::size_t n = tree.members.size();
    std::vector<std::array<double, 16>> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int v = tree.members[i];
        acc[i] = sg.internal[v];
        for (auto [u, e] : sg.adj[v]) {
            if (pos[u] >= 0) continue;
            for (int s = 0; s < 16; ++s) acc[i][s] += sg.pair_energy(e, v, s, states[u]);
        }
    }
    // edge index from each member to its parent
    std::vector<int> up_edge(n, -1);
    for (std::size_t i = 1; i < n; ++i) {
        const int v = tree.members[i], p = tree.members[tree.parent[i]];
        for (auto [u, e] : sg.adj[v])
            if (u == p) up_edge[i] = e;
    }
    std::vector<std::array<std::uint8_t, 16>> arg(n);
    for (std::size_t i = n; i-- > 1;) {
        const int v = tree.members[i], p = tree.members[tree.parent[i]];
        auto& parent_acc = acc[tree.parent[i]];
        for (int sp = 0; sp < 16; ++sp) {
            double best = std::numeric_limits<double>::infinity();
            int best_s = 0;
            for (int s = 0; s < 16; ++s) {
                const double val = acc[i][s] + sg.pair_energy(up_edge[i], v, s, sp);
                if (val < best) {
                    best = val;
                    best_s = s;
                }
            }
            arg[i][sp] = static_cast<std::uint8_t>(best_s);
            parent_acc[sp] += best;
        }
        (void)p;
    }
    TreeMinimum out{states, 0};
    int root_state = 0;
    for (int s = 1; s < 16; ++s)
        if (acc[0][s] < acc[0][root_state]) root_state = s;
    out.energy = acc[0][root_state];
    out.states[tree.members[0]] = root_state;
    for (std::size_t i = 1; i < n; ++i)
        out.states[tree.members[i]] = arg[i][out.states[tree.members[tree.parent[i]]]];
    return out;
}

std::string canonical(const HfsParams& p) {
    return "hfs;stall=" + std::to_string(p.stall_limit) +
           (p.sampler == TreeSampler::Random ? ";sampler=random" : ";sampler=comb");
}

double hfs_model_time_us(std::int64_t trees_used, int L) {
    return static_cast<double>(trees_used) * (kHfsOpsPerTreePerL * kHfsOpUs * L);
}

HfsOutcome hfs_solve(const IsingInstance& inst, const HfsParams& p, Rng& rng) {
    if (p.stall_limit < 1) throw std::invalid_argument("hfs_solve: stall_limit must be >= 1");
    const SuperGraph sg = condense(inst);
    std::vector<int> states(sg.slot_count(), 0);
    for (int v : sg.vertices) states[v] = static_cast<int>(rng.below(16));
    double current = sg.energy(states);
    const double tol = sg.exact ? 0.5 : 1e-12;
    std::vector<char> in_tree(sg.slot_count(), 0);
    HfsOutcome out;
    double coverage = 0;
    int stall = 0;
    while (stall < p.stall_limit) {
        InducedTree t = p.sampler == TreeSampler::Random
                            ? sample_induced_tree(sg, rng)
                            : comb_tree(sg, static_cast<int>(rng.below(sg.L)), rng.below(2) == 1);
        for (int v : t.members) in_tree[v] = 1;
        const double before = conditional_energy(sg, in_tree, states);
        TreeMinimum m = tree_minimize(sg, t, states);
        for (int v : t.members) in_tree[v] = 0;
        ++out.trees_used;
        coverage += static_cast<double>(t.size()) / static_cast<double>(sg.vertices.size());
        states = std::move(m.states);
        const double next = current - before + m.energy;
        if (next < current - tol) stall = 0;
        else ++stall;
        current = next;
    }
    if (!sg.exact) current = sg.energy(states);
    const auto raw = inst.nominal_raw_energy(spins_from_states(sg, states));
    out.best_energy = current * sg.energy_unit;
    out.success = inst.is_ground(raw);
    out.wall_model_time_us = hfs_model_time_us(out.trees_used, inst.L);
    out.mean_coverage = coverage / static_cast<double>(out.trees_used);
    return out;
}

HfsBatch hfs_batch(const IsingInstance& inst, const std::string& instance_id, const HfsParams& p, int n_runs,
                   std::uint64_t master_seed, int workers) {
    if (n_runs < 1) throw std::invalid_argument("hfs_batch: n_runs must be >= 1");
    HfsBatch b;
    b.trees.assign(n_runs, 0);
    b.success.assign(n_runs, 0);
    parallel_for(n_runs, workers, [&](std::size_t i) {
        Rng rng(run_seed(master_seed, instance_id, static_cast<std::int64_t>(i)));
        const auto o = hfs_solve(inst, p, rng);
        b.trees[i] = o.trees_used;
        b.success[i] = o.success ? 1 : 0;
    });
    auto& r = b.record;
    r.instance_id = instance_id;
    r.solver = "hfs";
    r.mode = "hfs";
    r.params = canonical(p);
    r.params_hash = params_hash(r.params);
    r.runs = n_runs;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < b.trees.size(); ++i) {
        total += b.trees[i];
        r.successes += b.success[i];
    }
    r.tau_per_run_us = hfs_model_time_us(total, inst.L) / n_runs;
    int L = 0, idx = 0;
    std::string a;
    if (split_instance_id(instance_id, L, a, idx)) {
        r.L = L;
        r.alpha = a;
    }
    return b;
}

std::string trees_histogram_line(const HfsBatch& b) {
    nlohmann::json j;
    j["instance_id"] = b.record.instance_id;
    j["params_hash"] = b.record.params_hash;
    j["trees"] = b.trees;
    std::vector<int> s(b.success.begin(), b.success.end());
    j["success"] = s;
    return j.dump();
}

}  // namespace frustbench
