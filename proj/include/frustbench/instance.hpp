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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "frustbench/chimera.hpp"
#include "frustbench/rational.hpp"
#include "frustbench/rng.hpp"

namespace frustbench {

/// Spin per vertex id in [0, 8L^2): +1 or -1 on active vertices, 0 on broken ones.
using SpinConfig = std::vector<std::int8_t>;

/// Throws std::invalid_argument unless c is a full configuration on g.
void check_config(const ChimeraGraph& g, const SpinConfig& c);

/// Closed walk path[0] -> path[1] -> ... -> path[l-1] -> path[0].
using LoopPath = std::vector<int>;

/// Frustrated loop: couplings[k] sits on edge (path[k], path[(k+1) % l]).
struct LoopClause {
    LoopPath path;
    std::vector<std::int8_t> couplings;
    int flipped = 0;

    int length() const { return static_cast<int>(path.size()); }
    /// Sum of couplings[k] * s_u * s_v around the loop.
    int energy(const SpinConfig& c) const;
};

/// Planted-solution instance. Couplings are kept as integers (the clause
/// sums) together with the integer scale factor, so every energy is exact.
struct PlantedInstance {
    ChimeraGraph graph;
    std::vector<LoopClause> clauses;
    std::vector<int> raw_couplings;  ///< indexed like graph.edges()
    int scale_factor = 1;
    SpinConfig planted;
    Rational alpha;
    int min_len = 8;
    std::uint64_t seed = 0;

    int clause_count() const { return static_cast<int>(clauses.size()); }
    Rational coupling(int edge) const { return {raw_couplings[edge], scale_factor}; }
    /// Sum over clauses of -(l - 2), in raw (unscaled) units.
    std::int64_t ground_energy_raw() const;
    Rational ground_energy() const { return {ground_energy_raw(), scale_factor}; }
    /// Vertices touched by at least one clause, ascending.
    std::vector<int> participating() const;
};

class LoopGenerationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Independent fair +-1 draw per active vertex, deterministic in seed.
SpinConfig plant_solution(const ChimeraGraph& g, std::uint64_t seed);

/// Random-walk loop: uniform start, uniform non-reversing steps, stop on the
/// first revisit and drop the tail. Loops shorter than min_len are redrawn;
/// after max_attempts failures LoopGenerationError is thrown.
LoopPath random_loop(const ChimeraGraph& g, Rng& rng, int min_len = 8, int max_attempts = 10000);

/// Ferromagnetic couplings -s_u s_v around the loop with one uniformly
/// chosen coupling sign-flipped.
LoopClause make_clause(const LoopPath& loop, const SpinConfig& planted, Rng& rng);

/// Number of clauses for a density: round-half-up(alpha * N).
int clause_count_for(const Rational& alpha, int n_vertices);

/// Plants a solution, draws round(alpha N) loops and sums the clauses.
/// Throws std::invalid_argument when alpha gives zero clauses.
PlantedInstance assemble_instance(const ChimeraGraph& g, const Rational& alpha, std::uint64_t seed,
                                  int min_len = 8);

/// Builds an instance from explicit clauses (used by tests and the parser).
PlantedInstance instance_from_clauses(const ChimeraGraph& g, std::vector<LoopClause> clauses, SpinConfig planted,
                                      const Rational& alpha, int min_len, std::uint64_t seed);

/// Sum over edges of raw coupling * s_u * s_v; equals energy() * scale_factor.
std::int64_t raw_energy(const PlantedInstance& inst, const SpinConfig& c);
Rational energy(const PlantedInstance& inst, const SpinConfig& c);

/// Edges whose nonzero coupling the planted state leaves unsatisfied, over
/// the total edge count of the graph.
Rational frustration_fraction(const PlantedInstance& inst);

/// Instance file text (see README for the format). Rescaled couplings are
/// not stored; they follow from the raw values and the scale factor.
std::string write_instance(const PlantedInstance& inst);
PlantedInstance parse_instance(std::string_view text);
PlantedInstance load_instance(const std::string& path);

/// Solver-facing form: per-vertex adjacency with the couplings the dynamics
/// see (weights) and the nominal integer couplings used to judge success.
struct IsingInstance {
    int L = 1;
    int n = 0;  ///< ideal vertex count 8L^2
    std::vector<int> active;         ///< active vertex ids, ascending
    std::vector<int> sweep_order;    ///< partition_a ascending, then partition_b
    std::vector<int> nbr_offset;     ///< CSR over all n ids
    std::vector<int> nbr;
    std::vector<double> nbr_weight;  ///< dynamics coupling
    std::vector<int> nbr_raw;        ///< nominal raw coupling
    std::vector<Edge> edges;
    std::vector<double> weights;     ///< per edge, dynamics
    std::vector<int> raw;            ///< per edge, nominal
    int scale_factor = 1;
    std::int64_t ground_raw = 0;
    bool noisy = false;  ///< when true the planted ground energy is nominal only

    double dynamics_energy(const SpinConfig& c) const;
    std::int64_t nominal_raw_energy(const SpinConfig& c) const;
    bool is_ground(std::int64_t nominal_raw) const { return nominal_raw == ground_raw; }
};

IsingInstance to_ising(const PlantedInstance& inst);

/// Adds an independent uniform draw in [-level, level] to every nonzero
/// rescaled coupling. The planted ground energy becomes nominal.
IsingInstance inject_noise(const PlantedInstance& inst, double level, Rng& rng);

}  // namespace frustbench
