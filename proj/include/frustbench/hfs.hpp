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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "frustbench/instance.hpp"
#include "frustbench/records.hpp"
#include "frustbench/rng.hpp"

namespace frustbench {

/// Model time per basic tree operation, microseconds.
inline constexpr double kHfsOpUs = 0.5;
/// Serial operations per tree on C_L: 5/4 L (constant term dropped).
inline constexpr double kHfsOpsPerTreePerL = 1.25;

/// Half unit cells condensed into 16-state supervertices. Supervertex
/// 2 * cell + half bundles qubits 8 * cell + 4 * half + {0..3}; bit i of a
/// state is qubit i of the half, set meaning spin +1.
///
/// Tables hold raw integer couplings (as doubles) for noiseless instances,
/// so every sum is exact; noisy instances carry their perturbed couplings.
struct SuperGraph {
    struct SuperEdge {
        int a = 0;
        int b = 0;
        std::array<double, 256> table{};  ///< table[16 * state_a + state_b]
    };

    int L = 1;
    std::vector<char> present;  ///< per supervertex slot (2 L^2)
    std::vector<std::uint8_t> qubit_mask;  ///< per slot, bit i set when qubit i is active
    std::vector<int> vertices;  ///< present slots, ascending
    std::vector<SuperEdge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  ///< slot -> (neighbor, edge index)
    std::vector<std::array<double, 16>> internal;      ///< per slot; zero for field-free instances
    double energy_unit = 1.0;  ///< multiply table energies by this for scaled units
    bool exact = true;

    int slot_count() const { return static_cast<int>(present.size()); }
    /// Table entry of edge e with endpoint v in state sv and the other in su.
    double pair_energy(int e, int v, int sv, int su) const {
        const auto& ed = edges[e];
        return ed.a == v ? ed.table[16 * sv + su] : ed.table[16 * su + sv];
    }
    /// Sum of internal and superedge energies; one state per slot.
    double energy(const std::vector<int>& states) const;
};

/// Throws std::logic_error if a fully broken half still carries couplings.
SuperGraph condense(const IsingInstance& inst);
SuperGraph condense(const PlantedInstance& inst);

std::vector<int> states_from_spins(const SuperGraph& sg, const SpinConfig& s);
SpinConfig spins_from_states(const SuperGraph& sg, const std::vector<int>& states);

/// Induced tree in growth order: members[0] is the root, parents precede
/// children, parent[i] indexes members (-1 for the root).
struct InducedTree {
    std::vector<int> members;
    std::vector<int> parent;

    std::size_t size() const { return members.size(); }
};

/// True when the members induce a connected acyclic subgraph.
bool is_induced_tree(const SuperGraph& sg, const std::vector<int>& members);
/// True when no outside supervertex can join while keeping an induced tree.
bool is_maximal_induced_tree(const SuperGraph& sg, const std::vector<int>& members);

/// Randomized greedy growth from a uniform root: repeatedly add a uniform
/// frontier supervertex with exactly one tree neighbor. max_size = 0 means
/// grow until maximal.
InducedTree sample_induced_tree(const SuperGraph& sg, Rng& rng, int max_size = 0);

/// Deterministic comb: a spine of vertical halves down column `spine`
/// (or horizontal halves along row `spine` when transposed), every
/// perpendicular half as teeth, then lowest-slot completion to maximality.
InducedTree comb_tree(const SuperGraph& sg, int spine, bool transposed);

struct TreeMinimum {
    std::vector<int> states;  ///< input states with tree members replaced
    double energy = 0;        ///< conditional energy at the minimum
};

/// Energy terms that involve at least one member of `in_tree`.
double conditional_energy(const SuperGraph& sg, const std::vector<char>& in_tree, const std::vector<int>& states);

/// Exact minimum over the tree's states given every other supervertex's
/// state, by leaf-to-root dynamic programming; ties go to the lowest state.
/// Throws std::invalid_argument if a non-tree supervertex lacks a state.
TreeMinimum tree_minimize(const SuperGraph& sg, const InducedTree& tree, const std::vector<int>& states);

enum class TreeSampler { Random, Comb };

struct HfsParams {
    int stall_limit = 16;
    TreeSampler sampler = TreeSampler::Random;
};

std::string canonical(const HfsParams& p);

struct HfsOutcome {
    double best_energy = 0;  ///< scaled units
    bool success = false;
    std::int64_t trees_used = 0;
    double wall_model_time_us = 0;
    double mean_coverage = 0;
};

/// trees_used * 0.625 us * L
double hfs_model_time_us(std::int64_t trees_used, int L);

/// Random start, then adopt conditional tree minima until stall_limit
/// consecutive trees bring no improvement.
HfsOutcome hfs_solve(const IsingInstance& inst, const HfsParams& p, Rng& rng);

struct HfsBatch {
    RunRecord record;                  ///< tau_per_run_us = mean model time per execution
    std::vector<std::int64_t> trees;   ///< per execution
    std::vector<char> success;         ///< per execution
};

HfsBatch hfs_batch(const IsingInstance& inst, const std::string& instance_id, const HfsParams& p, int n_runs,
                   std::uint64_t master_seed, int workers = 1);

/// JSON line {instance_id, params_hash, trees: [...], success: [...]}.
std::string trees_histogram_line(const HfsBatch& b);

}  // namespace frustbench
