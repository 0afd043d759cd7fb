# Copyright 2026 The frustbench Authors.
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Planted-solution Ising benchmarks on Chimera graphs."""

from ._frustbench import (
    ChimeraGraph,
    PlantedInstance,
    brute_force_count,
    build_chimera,
    enumerate_solutions,
    euclid_distance,
    generate_instance,
    hfs_solve,
    load_instance,
    pearson,
    posterior_mean,
    quantile,
    run_command,
    runs_to_solution,
    sa_batch,
    scaling_fit,
    sqa_batch,
    sssv_batch,
)

__all__ = [
    "ChimeraGraph",
    "PlantedInstance",
    "brute_force_count",
    "build_chimera",
    "enumerate_solutions",
    "euclid_distance",
    "generate_instance",
    "hfs_solve",
    "load_instance",
    "pearson",
    "posterior_mean",
    "quantile",
    "run_command",
    "runs_to_solution",
    "sa_batch",
    "scaling_fit",
    "sqa_batch",
    "sssv_batch",
]
