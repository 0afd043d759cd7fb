#include <algorithm>
#include <set>

#include "doctest.h"
#include "frustbench/chimera.hpp"

using namespace frustbench;

namespace {

void check_invariants(const ChimeraGraph& g) {
    std::set<int> a(g.partition_a().begin(), g.partition_a().end());
    std::set<int> b(g.partition_b().begin(), g.partition_b().end());
    CHECK(a.size() + b.size() == g.vertex_count());
    for (int v : a) CHECK_FALSE(b.count(v));
    for (auto [u, v] : g.edges()) {
        CHECK(g.is_active(u));
        CHECK(g.is_active(v));
        CHECK(a.count(u) != a.count(v));
    }
    for (int v : g.vertices()) CHECK(g.neighbors(v).size() <= 6);
}

}  // namespace

TEST_CASE("ideal chimera sizes follow 8L^2 vertices and 16L^2 + 8L(L-1) edges") {
    for (int L = 1; L <= 8; ++L) {
        const auto g = build_chimera(L);
        CHECK(g.vertex_count() == static_cast<std::size_t>(8 * L * L));
        CHECK(g.edge_count() == static_cast<std::size_t>(16 * L * L + 8 * L * (L - 1)));
        check_invariants(g);
    }
    CHECK(build_chimera(8).edge_count() == 1472);
    CHECK(build_chimera(1).edge_count() == 16);
}

TEST_CASE("neighbors: K44 in a lone cell, 5 on a boundary, 6 in the interior") {
    const auto c1 = build_chimera(1);
    auto n0 = c1.neighbors(0);
    CHECK(std::vector<int>(n0.begin(), n0.end()) == std::vector<int>{4, 5, 6, 7});

    const auto c2 = build_chimera(2);
    // qubit 0 of cell (0,0) has a horizontal coupler to cell (0,1)
    CHECK(c2.neighbors(0).size() == 5);
    CHECK(c2.edge_index(0, 8) >= 0);
    CHECK(c2.edge_index(4, 8 * 2 + 4) >= 0);

    const auto c8 = build_chimera(8);
    const int interior = c8.id({3, 3, 1});
    CHECK(c8.neighbors(interior).size() == 6);
    auto n = c8.neighbors(interior);
    CHECK(std::is_sorted(n.begin(), n.end()));
    CHECK_THROWS_AS(c8.neighbors(512), std::out_of_range);
}

TEST_CASE("broken vertices are removed with their edges") {
    const std::vector<int> broken{0, 13};
    const auto g = build_chimera(2, broken);
    CHECK(g.vertex_count() == 30);
    for (auto [u, v] : g.edges()) {
        CHECK(u != 0);
        CHECK(v != 13);
    }
    CHECK_THROWS(g.neighbors(0));
    check_invariants(g);
    CHECK_THROWS_AS(build_chimera(0), std::invalid_argument);
    const std::vector<int> bad{32};
    CHECK_THROWS_AS(build_chimera(2, bad), std::invalid_argument);
}

TEST_CASE("sample mask gives the published nested vertex counts") {
    const auto g = load_chimera(FRUSTBENCH_DATA_DIR "/broken_c8.mask");
    CHECK(g.L() == 8);
    CHECK(g.vertex_count() == 503);
    const std::size_t expected[] = {31, 70, 126, 198, 284, 385, 503};
    for (int L = 2; L <= 8; ++L) {
        const auto s = g.subgraph(L);
        CHECK(s.vertex_count() == expected[L - 2]);
        check_invariants(s);
    }
}

TEST_CASE("subgraphs nest and the full subgraph is the identity") {
    const auto g = load_chimera(FRUSTBENCH_DATA_DIR "/broken_c8.mask");
    CHECK(g.subgraph(8).serialize() == g.serialize());
    const auto ideal = build_chimera(8).subgraph(2);
    CHECK(ideal.vertex_count() == 32);
    CHECK(ideal.edge_count() == 80);
    for (int L = 1; L < 8; ++L) {
        const auto small = g.subgraph(L), big = g.subgraph(L + 1);
        for (int v : small.vertices()) CHECK(big.is_active(big.id(small.coord(v))));
    }
    CHECK_THROWS(g.subgraph(9));
    CHECK_THROWS(g.subgraph(0));
}

TEST_CASE("graph text round-trips bit-exactly") {
    const std::vector<int> broken{3, 40, 77};
    const auto g = build_chimera(4, broken);
    const auto text = g.serialize();
    CHECK(text.rfind("chimera L=4\nbroken: 3 40 77\n", 0) == 0);
    const auto back = ChimeraGraph::parse(text);
    CHECK(back.serialize() == text);
    CHECK(build_chimera(4, broken).serialize() == text);
}
