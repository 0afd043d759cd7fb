#include <algorithm>
#include <set>

#include "doctest.h"
#include "frustbench/hfs.hpp"
#include "oracle.hpp"

using namespace frustbench;

namespace {

// qubits 0,1 and 4,5 of each C_2 cell: 16 spins, still loopy
ChimeraGraph sixteen_spin_graph() {
    std::vector<int> broken;
    for (int cell = 0; cell < 4; ++cell)
        for (int k : {2, 3, 6, 7}) broken.push_back(8 * cell + k);
    return build_chimera(2, broken);
}

PlantedInstance single_clause(int length, std::uint64_t seed) {
    const auto g = build_chimera(2);
    const auto planted = plant_solution(g, seed);
    Rng rng(seed);
    LoopPath loop;
    do loop = random_loop(g, rng, length); while (static_cast<int>(loop.size()) != length);
    auto c = make_clause(loop, planted, rng);
    return instance_from_clauses(g, {c}, planted, Rational(1, 32), length, seed);
}

}  // namespace

TEST_CASE("ideal C_2 condenses to a ring of eight supervertices") {
    const auto inst = assemble_instance(build_chimera(2), Rational(1, 10), 3);
    const auto sg = condense(inst);
    CHECK(sg.vertices.size() == 8);
    CHECK(sg.edges.size() == 8);
    CHECK(sg.exact);
    for (const auto& e : sg.edges) CHECK(e.a < e.b);
    const auto zero = condense(instance_from_clauses(build_chimera(2), {}, plant_solution(build_chimera(2), 1),
                                                     Rational(0), 8, 1));
    for (const auto& e : zero.edges)
        CHECK(std::all_of(e.table.begin(), e.table.end(), [](double x) { return x == 0; }));
}

TEST_CASE("supergraph energy reproduces the spin energy on every configuration") {
    const auto g = sixteen_spin_graph();
    REQUIRE(g.vertex_count() == 16);
    const auto inst = assemble_instance(g, Rational(1, 2), 21, 4);
    const auto sg = condense(inst);
    SpinConfig s(g.ideal_vertex_count(), 0);
    const auto& vs = g.vertices();
    bool all_equal = true;
    for (std::uint32_t m = 0; m < (1u << 16); ++m) {
        for (int i = 0; i < 16; ++i) s[vs[i]] = (m >> i) & 1 ? 1 : -1;
        const auto states = states_from_spins(sg, s);
        if (sg.energy(states) != static_cast<double>(oracle::raw_energy(inst, s))) all_equal = false;
        if (m % 4099 == 0) CHECK(spins_from_states(sg, states) == s);
    }
    CHECK(all_equal);
}

TEST_CASE("sampled trees are maximal induced trees") {
    const auto g8 = load_chimera(std::string(FRUSTBENCH_DATA_DIR) + "/broken_c8.mask");
    const auto inst = assemble_instance(g8, Rational(1, 5), 1);
    const auto sg = condense(inst);
    Rng rng(5);
    double coverage = 0;
    for (int t = 0; t < 50; ++t) {
        const auto tree = sample_induced_tree(sg, rng);
        CHECK(is_induced_tree(sg, tree.members));
        CHECK(is_maximal_induced_tree(sg, tree.members));
        CHECK(tree.parent[0] == -1);
        for (std::size_t i = 1; i < tree.size(); ++i) CHECK(tree.parent[i] < static_cast<int>(i));
        coverage += tree.size() / double(sg.vertices.size());
    }
    MESSAGE("mean C_8 tree coverage " << coverage / 50);
    CHECK(coverage / 50 > 0.5);
    for (bool tr : {false, true}) {
        const auto comb = comb_tree(sg, 3, tr);
        CHECK(is_induced_tree(sg, comb.members));
        CHECK(is_maximal_induced_tree(sg, comb.members));
    }

    const auto one = condense(assemble_instance(build_chimera(1), Rational(1, 2), 2, 4));
    Rng r1(1);
    CHECK(sample_induced_tree(one, r1).size() == 2);
}

TEST_CASE("tree minimization matches brute force over small trees") {
    const auto inst = assemble_instance(build_chimera(3), Rational(3, 10), 8);
    const auto sg = condense(inst);
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 1 + trial % 3;
        const auto tree = sample_induced_tree(sg, rng, k);
        std::vector<int> states(sg.slot_count(), -1);
        for (int v : sg.vertices) states[v] = static_cast<int>(rng.below(16));
        std::vector<char> in_tree(sg.slot_count(), 0);
        for (int v : tree.members) {
            in_tree[v] = 1;
            states[v] = -1;
        }
        const auto got = tree_minimize(sg, tree, states);
        double best = 1e300;
        auto probe = states;
        const int total = 1 << (4 * static_cast<int>(tree.size()));
        for (int m = 0; m < total; ++m) {
            for (std::size_t i = 0; i < tree.size(); ++i) probe[tree.members[i]] = (m >> (4 * i)) & 15;
            best = std::min(best, conditional_energy(sg, in_tree, probe));
        }
        CHECK(got.energy == best);
        CHECK(conditional_energy(sg, in_tree, got.states) == best);
    }
    const auto tree = sample_induced_tree(sg, rng, 2);
    std::vector<int> missing(sg.slot_count(), -1);
    CHECK_THROWS_AS(tree_minimize(sg, tree, missing), std::invalid_argument);
}

TEST_CASE("HFS solves a single eight-loop and charges model time per tree") {
    CHECK(hfs_model_time_us(40, 8) == doctest::Approx(200.0));
    const auto ising = to_ising(single_clause(8, 4));
    const auto b = hfs_batch(ising, "L2/a1_32/0", {}, 1000, 7);
    CHECK(b.record.successes >= 990);
    CHECK(b.record.solver == "hfs");
    double mean_trees = 0;
    for (auto t : b.trees) mean_trees += t;
    CHECK(b.record.tau_per_run_us == doctest::Approx(hfs_model_time_us(1, 2) * mean_trees / 1000));
    CHECK(trees_histogram_line(b).find("\"trees\"") != std::string::npos);
}

TEST_CASE("HFS energy never exceeds its start and matches a nominal configuration") {
    const auto inst = assemble_instance(build_chimera(3), Rational(2, 10), 12);
    const auto ising = to_ising(inst);
    for (auto sampler : {TreeSampler::Random, TreeSampler::Comb}) {
        HfsParams p;
        p.sampler = sampler;
        Rng rng(3);
        const auto o = hfs_solve(ising, p, rng);
        CHECK(o.best_energy >= static_cast<double>(inst.ground_energy_raw()) / inst.scale_factor - 1e-12);
        CHECK(o.trees_used >= p.stall_limit);
        CHECK(o.mean_coverage > 0);
    }
}
