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

import math

import pytest

import frustbench as fb


def test_chimera_counts():
    g = fb.build_chimera(8)
    assert g.vertex_count == 512
    assert g.edge_count == 1472
    assert g.subgraph(2).edge_count == 80
    assert fb.build_chimera(1).neighbors(0) == [4, 5, 6, 7]


def test_instance_round_trip_and_planted_energy():
    g = fb.build_chimera(2)
    inst = fb.generate_instance(g, "0.1", seed=7)
    again = fb.PlantedInstance.from_text(inst.to_text())
    assert again.to_text() == inst.to_text()
    assert inst.raw_energy(inst.planted) == inst.ground_energy_raw
    assert inst.ground_energy_raw == -sum(l - 2 for l in inst.clause_lengths)
    assert 0.0 < inst.frustration_fraction() < 1.0


def test_solvers_find_easy_ground_state():
    inst = fb.generate_instance(fb.build_chimera(2), "0.05", seed=3)
    rec = fb.sa_batch(inst, sweeps=200, runs=20, seed=5)
    assert rec["runs"] == 20
    assert rec["successes"] >= 15
    out = fb.hfs_solve(inst, stall_limit=16, seed=2)
    assert out["wall_model_time_us"] == pytest.approx(out["trees_used"] * 0.625 * 2)


def test_enumerator_matches_brute_force():
    inst = fb.generate_instance(fb.build_chimera(2), "0.03", seed=11)
    if len(inst.participating) > 20:
        pytest.skip("too many participating spins for the brute-force check")
    e = fb.enumerate_solutions(inst)
    lo, count = fb.brute_force_count(inst)
    assert lo == inst.ground_energy_raw
    assert e["raw_count"] == count
    assert e["raw_count"] % 2 == 0
    assert e["reported_degeneracy"] == e["raw_count"] * 2 ** e["n_uq"]


def test_statistics():
    assert fb.runs_to_solution(0.5) == pytest.approx(6.64386, rel=1e-6)
    assert fb.runs_to_solution(0.99) == pytest.approx(1.0, rel=1e-12)
    assert fb.posterior_mean(0, 10000) == pytest.approx(0.5 / 10001, rel=1e-12)
    assert fb.euclid_distance([1.0, 0.0], [0.0, 1.0]) == pytest.approx(1.0)
    a, b, _, _ = fb.scaling_fit([4, 5, 6, 7, 8], [math.exp(1 + 0.5 * L) for L in range(4, 9)])
    assert a == pytest.approx(1.0, abs=1e-10)
    assert b == pytest.approx(0.5, abs=1e-10)
