#include <algorithm>
#include <set>

#include "doctest.h"
#include "frustbench/enumerator.hpp"
#include "oracle.hpp"

using namespace frustbench;

namespace {

LoopClause clause_of_length(const ChimeraGraph& g, const SpinConfig& planted, int length, Rng& rng) {
    LoopPath loop;
    do loop = random_loop(g, rng, length); while (static_cast<int>(loop.size()) != length);
    return make_clause(loop, planted, rng);
}

std::set<SpinConfig> as_set(const std::vector<SpinConfig>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("clause tables list exactly the minimizers") {
    const auto g = build_chimera(2);
    const auto planted = plant_solution(g, 3);
    Rng rng(1);
    const auto c4 = clause_of_length(g, planted, 4, rng);
    const auto t4 = clause_table(c4);
    CHECK(t4.row_count() == 8);
    for (int len : {4, 6, 8, 10, 12}) {
        const auto c = clause_of_length(g, planted, len, rng);
        auto exhaustive = clause_table(c, 16);
        auto closed = clause_table(c, 0);
        CHECK(exhaustive.row_count() == static_cast<std::size_t>(2 * len));
        CHECK(closed.row_count() == exhaustive.row_count());
        CHECK(closed.scope() == exhaustive.scope());
        for (std::size_t r = 0; r < closed.row_count(); ++r)
            CHECK(std::equal(closed.row_bits(r), closed.row_bits(r) + closed.words(), exhaustive.row_bits(r)));
        // the planted restriction is always a row
        bool found = false;
        for (std::size_t r = 0; r < closed.row_count() && !found; ++r) {
            bool all = true;
            for (std::size_t p = 0; p < closed.arity(); ++p)
                all = all && closed.spin(r, p) == planted[closed.scope()[p]];
            found = all;
        }
        CHECK(found);
    }
}

TEST_CASE("elimination orders are deterministic permutations") {
    const auto inst = assemble_instance(build_chimera(3), Rational(3, 10), 2);
    for (auto h : {OrderHeuristic::MinDegree, OrderHeuristic::MinFill}) {
        const auto a = elimination_order(inst, h), b = elimination_order(inst, h);
        CHECK(a == b);
        auto sorted = a;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == inst.participating());
    }
}

TEST_CASE("contradictory tables are detected") {
    ConstraintTable up({0}), down({0});
    up.add_row({1});
    down.add_row({-1});
    const auto e = eliminate({up, down}, {0});
    CHECK(e.contradiction);
    CHECK(e.contradiction_vertex == 0);
}

TEST_CASE("a lone eight-loop on C_2 has 16 ground states and 24 unused qubits") {
    const auto g = build_chimera(2);
    const auto planted = plant_solution(g, 6);
    Rng rng(2);
    const auto c = clause_of_length(g, planted, 8, rng);
    const auto inst = instance_from_clauses(g, {c}, planted, Rational(1, 32), 8, 6);
    const auto r = enumerate_solutions(inst);
    CHECK(r.raw_count == 16);
    CHECK(r.n_uq == 24);
    CHECK(r.reported_degeneracy == scaled_degeneracy(16, 24));
    CHECK(!r.capped);
    CHECK(!r.aborted);

    const auto empty = instance_from_clauses(g, {}, planted, Rational(0), 8, 6);
    const auto z = enumerate_solutions(empty);
    CHECK(z.raw_count == 1);
    CHECK(z.n_uq == 32);
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 40 && checked < 12; ++seed) {
        const auto inst = assemble_instance(build_chimera(2), Rational(1, 20), seed);
        const auto spins = oracle::clause_vertices(inst);
        if (spins.size() > 22) continue;
        ++checked;
        const auto m = oracle::scan(inst, spins);
        const auto r = enumerate_solutions(inst);
        CHECK(m.energy == inst.ground_energy_raw());
        CHECK(r.raw_count == m.count);
        CHECK(r.raw_count % 2 == 0);
        CHECK(brute_force_ground(inst).count == m.count);
        CHECK(r.n_uq == 32 - static_cast<int>(spins.size()));
        for (const auto& s : r.solutions) CHECK(oracle::raw_energy(inst, s) == m.energy);

        EnumerateOptions fill;
        fill.heuristic = OrderHeuristic::MinFill;
        CHECK(as_set(enumerate_solutions(inst, fill).solutions) == as_set(r.solutions));
    }
    CHECK(checked >= 5);
}

TEST_CASE("cap and row budget") {
    const auto inst = assemble_instance(build_chimera(3), Rational(1, 10), 5);
    const auto full = enumerate_solutions(inst);
    REQUIRE(full.raw_count > 2);
    EnumerateOptions o;
    o.cap = full.raw_count;
    CHECK(!enumerate_solutions(inst, o).capped);
    o.cap = full.raw_count - 1;
    const auto c = enumerate_solutions(inst, o);
    CHECK(c.capped);
    CHECK(c.raw_count == o.cap);
    EnumerateOptions tight;
    tight.row_budget = 4;
    const auto a = enumerate_solutions(inst, tight);
    CHECK(a.aborted);
    CHECK(!a.abort_reason.empty());
    CHECK(to_record(a, "x").reported_degeneracy == "unknown");
}

TEST_CASE("scaled degeneracy is exact past 64 bits") {
    CHECK(scaled_degeneracy(3, 70) == "3541774862152233910272");
    CHECK(scaled_degeneracy(16, 24) == "268435456");
    CHECK(scaled_degeneracy(1, 0) == "1");
}
