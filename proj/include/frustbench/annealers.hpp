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
#include <variant>

#include "frustbench/instance.hpp"
#include "frustbench/records.hpp"
#include "frustbench/rng.hpp"
#include "frustbench/schedule.hpp"

namespace frustbench {

// Model time per sweep, in microseconds, under parallel bipartite sweeps.
inline constexpr double kTauSaUs = 3.54;
inline constexpr double kTauSqaUs = 9.92;
inline constexpr double kTauSssvUs = 10.34;

/// Solver mode: report the best energy seen along the anneal, or only the
/// configuration present at the end.
enum class AnnealMode { Solver, Annealer };

struct SaParams {
    int sweeps = 1000;
    double beta_i = 0.01;
    double beta_f = 5.0;
    AnnealMode mode = AnnealMode::Solver;
};

enum class SliceReadout { MinSlice, RandomSlice, FixedSlice };

struct SqaParams {
    int sweeps = 1000;
    int trotter_slices = 64;
    double beta = 10.0;
    Schedule schedule = Schedule::linear();
    AnnealMode mode = AnnealMode::Annealer;
    SliceReadout readout = SliceReadout::MinSlice;
    int fixed_slice = 0;
};

enum class RotorProposal { Uniform, Gaussian };

struct SssvParams {
    int sweeps = 10000;
    double beta = 20.0;  ///< in units of the schedule energy scale
    Schedule schedule = Schedule::linear();
    RotorProposal proposal = RotorProposal::Uniform;
    double gaussian_width = 0.3;  ///< radians, Gaussian proposal only
};

/// Throw std::invalid_argument when parameters break their invariants.
void validate(const SaParams& p);
void validate(const SqaParams& p);
void validate(const SssvParams& p);

/// Canonical "key=value;..." text; hashed into RunRecord::params_hash.
std::string canonical(const SaParams& p);
std::string canonical(const SqaParams& p);
std::string canonical(const SssvParams& p);

struct RunOutcome {
    double best_energy = 0;   ///< dynamics energy, scaled units
    double final_energy = 0;
    bool success = false;     ///< per the run's mode
    bool best_success = false;
    bool final_success = false;
    int sweeps_used = 0;
    double wall_model_time_us = 0;
};

/// True with probability min(1, exp(-beta * delta_e)).
bool metropolis_accept(double delta_e, double beta, Rng& rng);

/// Imaginary-time coupling -0.5 ln tanh(a_eff). Throws for a_eff <= 0.
double transverse_coupling(double a_eff);
/// 1 - exp(-2 J_perp), written as 1 - tanh(a_eff) so a_eff = 0 gives 1.
double cluster_add_probability(double a_eff);

struct TimeCluster {
    int start = 0;   ///< first slice, walking forward
    int length = 0;  ///< slices in the cluster, 1..M
    int attempts = 0;  ///< parallel-neighbor bonds tried
    int added = 0;     ///< of which added
};

/// 1-D Wolff growth along a periodic imaginary-time column, both directions
/// from `seed_slice`, adding parallel neighbors with probability p_add.
TimeCluster grow_time_cluster(std::span<const std::int8_t> column, int seed_slice, double p_add, Rng& rng);

/// One Metropolis pass over inst.sweep_order at inverse temperature beta.
/// on_flip(de_dyn, de_raw) runs after each accepted flip.
template <class OnFlip>
void metropolis_sweep(const IsingInstance& inst, SpinConfig& s, double beta, Rng& rng, OnFlip&& on_flip) {
    for (int v : inst.sweep_order) {
        double h = 0;
        int h_raw = 0;
        for (int q = inst.nbr_offset[v]; q < inst.nbr_offset[v + 1]; ++q) {
            h += inst.nbr_weight[q] * s[inst.nbr[q]];
            h_raw += inst.nbr_raw[q] * s[inst.nbr[q]];
        }
        const double de = -2.0 * s[v] * h;
        if (metropolis_accept(de, beta, rng)) {
            const int de_raw = -2 * s[v] * h_raw;
            s[v] = static_cast<std::int8_t>(-s[v]);
            on_flip(de, de_raw);
        }
    }
}

RunOutcome sa_run(const IsingInstance& inst, const SaParams& p, Rng& rng);
RunOutcome sqa_run(const IsingInstance& inst, const SqaParams& p, Rng& rng);
RunOutcome sssv_run(const IsingInstance& inst, const SssvParams& p, Rng& rng);

/// Rotor energy -A sum sin(theta) + B sum J cos(theta_i) cos(theta_j), with
/// the dynamics couplings.
double rotor_energy(const IsingInstance& inst, std::span<const double> theta, double A, double B);
/// sign(cos theta), ties to +1; broken vertices map to 0.
SpinConfig project_rotors(const IsingInstance& inst, std::span<const double> theta);

using McParams = std::variant<SaParams, SqaParams, SssvParams>;

std::string solver_name(const McParams& p);
std::string mode_name(const McParams& p);
double tau_per_run_us(const McParams& p);

/// Seed of run `run_index` of instance `instance_id` under `master_seed`.
std::uint64_t run_seed(std::uint64_t master_seed, const std::string& instance_id, std::int64_t run_index);

/// n_runs independent runs, each with its own derived stream; the record is
/// independent of worker count and scheduling.
RunRecord run_batch(const IsingInstance& inst, const std::string& instance_id, const McParams& params, int n_runs,
                    std::uint64_t master_seed, int workers = 1);

}  // namespace frustbench
