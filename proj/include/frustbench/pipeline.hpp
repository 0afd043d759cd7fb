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
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "frustbench/analytics.hpp"
#include "frustbench/annealers.hpp"
#include "frustbench/hfs.hpp"
#include "frustbench/instance.hpp"

namespace frustbench {

/// Experiment configuration read from a flat "key = value" file. List
/// values are comma separated; '#' starts a comment. Unknown keys are
/// rejected. Relative paths resolve against the plan file's directory.
struct ExperimentPlan {
    std::vector<int> L{2, 3};
    std::vector<Rational> alpha{Rational(1, 10), Rational(2, 10)};
    int instances = 20;
    int min_len = 8;
    std::uint64_t master_seed = 1;
    std::string mask;  ///< optional graph/mask file; subgraphs taken from it
    std::string out = "frustbench-out";
    std::vector<std::string> solvers{"sa"};

    std::vector<int> sa_sweeps{1000};
    double sa_beta_i = 0.01;
    std::vector<double> sa_beta_f{5.0};
    std::vector<AnnealMode> sa_modes{AnnealMode::Solver};
    int sa_runs = 1000;

    std::vector<int> sqa_sweeps{1000};
    int sqa_slices = 64;
    double sqa_beta = 10.0;
    std::vector<AnnealMode> sqa_modes{AnnealMode::Annealer};
    SliceReadout sqa_readout = SliceReadout::MinSlice;
    std::string sqa_schedule;  ///< empty: linear
    int sqa_runs = 100;

    std::vector<int> sssv_sweeps{10000};
    double sssv_beta = 20.0;
    std::string sssv_schedule;
    int sssv_runs = 100;

    int hfs_stall = 16;
    TreeSampler hfs_sampler = TreeSampler::Random;
    int hfs_runs = 100;

    double noise = 0.0;  ///< uniform coupling perturbation amplitude
    std::int64_t enumerate_cap = 100000;

    std::vector<double> quantiles{0.5};
    int resamples = 1000;
    int fit_L_min = 4;
    std::string reference;  ///< speedup reference solver; empty: first listed
    DistanceConvention distance = DistanceConvention::Rms;
    double pd = 0.99;
};

ExperimentPlan parse_plan(std::string_view text, const std::string& base_dir = ".");
ExperimentPlan load_plan(const std::string& path);

/// "0.1" for 1/10; non-terminating decimals become "1_3".
std::string alpha_label(const Rational& alpha);

/// Seed of instance `index` in cell (L, alpha).
std::uint64_t instance_seed(std::uint64_t master_seed, int L, const Rational& alpha, int index);

struct InstanceRef {
    std::string id;  ///< "L<L>/a<alpha>/<index>"
    int L = 0;
    Rational alpha;
    int index = 0;
    std::string path;
};

/// Every instance of the plan, ordered by L, alpha (plan order), index.
std::vector<InstanceRef> plan_instances(const ExperimentPlan& plan);

/// Host graph for side L: the top-left block of the mask graph, or ideal.
ChimeraGraph host_graph(const ExperimentPlan& plan, int L);

struct CommandStatus {
    int completed = 0;
    int skipped = 0;
    int failed = 0;
    bool ok() const { return failed == 0; }
};

CommandStatus cmd_generate(const ExperimentPlan& plan, int workers, std::ostream& log);

/// Solver roster: any of "sa", "sqa", "sssv", "hfs"; empty means plan.solvers.
CommandStatus cmd_solve(const ExperimentPlan& plan, const std::vector<std::string>& solvers, int workers,
                        std::ostream& log);

CommandStatus cmd_enumerate(const ExperimentPlan& plan, std::int64_t cap, bool oracle, int workers, std::ostream& log);

CommandStatus cmd_analyze(const ExperimentPlan& plan, std::ostream& log);

/// Parameter settings the plan asks of one solver.
std::vector<McParams> annealer_grid(const ExperimentPlan& plan, const std::string& solver);

/// Hex FNV-1a over the sorted lines of every records file in `dir`.
std::string records_hash(const std::string& dir);

}  // namespace frustbench
