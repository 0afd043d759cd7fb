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

#include "frustbench/instance.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace frustbench {

void check_config(const ChimeraGraph& g, const SpinConfig& c) {
    if (static_cast<int>(c.size()) != g.ideal_vertex_count())
        throw std::invalid_argument("spin configuration size does not match graph");
    for (int v = 0; v < g.ideal_vertex_count(); ++v) {
        const int s = c[v];
        if (g.is_active(v) ? (s != 1 && s != -1) : s != 0)
            throw std::invalid_argument("spin configuration domain mismatch at vertex " + std::to_string(v));
    }
}

int LoopClause::energy(const SpinConfig& c) const {
    const int l = length();
    int e = 0;
    for (int k = 0; k < l; ++k) e += couplings[k] * c[path[k]] * c[path[(k + 1) % l]];
    return e;
}

std::int64_t PlantedInstance::ground_energy_raw() const {
    std::int64_t e = 0;
    for (const auto& cl : clauses) e -= cl.length() - 2;
    return e;
}

std::vector<int> PlantedInstance::participating() const {
    std::vector<char> used(graph.ideal_vertex_count(), 0);
    for (const auto& cl : clauses)
        for (int v : cl.path) used[v] = 1;
    std::vector<int> out;
    for (int v = 0; v < graph.ideal_vertex_count(); ++v)
        if (used[v]) out.push_back(v);
    return out;
}

SpinConfig plant_solution(const ChimeraGraph& g, std::uint64_t seed) {
    Rng rng(seed);
    SpinConfig s(g.ideal_vertex_count(), 0);
    for (int v : g.vertices()) s[v] = static_cast<std::int8_t>(rng.spin());
    return s;
}

LoopPath random_loop(const ChimeraGraph& g, Rng& rng, int min_len, int max_attempts) {
    if (min_len < 4 || min_len % 2 != 0) throw std::invalid_argument("random_loop: min_len must be even and >= 4");
    if (g.vertex_count() == 0) throw LoopGenerationError("random_loop: graph has no active vertices");
    const auto& verts = g.vertices();
    std::vector<int> position(g.ideal_vertex_count(), -1);
    LoopPath walk;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        for (int v : walk) position[v] = -1;
        walk.clear();
        int prev = -1;
        int cur = verts[rng.below(verts.size())];
        bool stuck = false;
        while (position[cur] < 0) {
            position[cur] = static_cast<int>(walk.size());
            walk.push_back(cur);
            const auto nb = g.neighbors(cur);
            const int choices = static_cast<int>(nb.size()) - (prev >= 0 ? 1 : 0);
            if (choices <= 0) {
                stuck = true;
                break;
            }
            // uniform over neighbors other than the vertex just left
            int pick = static_cast<int>(rng.below(choices));
            int next = -1;
            for (int u : nb) {
                if (u == prev) continue;
                if (pick-- == 0) {
                    next = u;
                    break;
                }
            }
            prev = cur;
            cur = next;
        }
        if (stuck) continue;
        const int start = position[cur];
        const int len = static_cast<int>(walk.size()) - start;
        if (len < min_len) continue;
        LoopPath loop(walk.begin() + start, walk.end());
        for (int v : walk) position[v] = -1;
        return loop;
    }
    throw LoopGenerationError("random_loop: no loop of length >= " + std::to_string(min_len) + " after " +
                              std::to_string(max_attempts) + " attempts");
}

LoopClause make_clause(const LoopPath& loop, const SpinConfig& planted, Rng& rng) {
    LoopClause cl;
    cl.path = loop;
    const int l = static_cast<int>(loop.size());
    cl.couplings.resize(l);
    for (int k = 0; k < l; ++k)
        cl.couplings[k] = static_cast<std::int8_t>(-planted[loop[k]] * planted[loop[(k + 1) % l]]);
    cl.flipped = static_cast<int>(rng.below(l));
    cl.couplings[cl.flipped] = static_cast<std::int8_t>(-cl.couplings[cl.flipped]);
    return cl;
}

int clause_count_for(const Rational& alpha, int n_vertices) {
    if (alpha <= Rational(0)) throw std::invalid_argument("clause density must be positive");
    return static_cast<int>(round_half_up(alpha * Rational(n_vertices)));
}

PlantedInstance instance_from_clauses(const ChimeraGraph& g, std::vector<LoopClause> clauses, SpinConfig planted,
                                      const Rational& alpha, int min_len, std::uint64_t seed) {
    check_config(g, planted);
    PlantedInstance inst{g, std::move(clauses), std::vector<int>(g.edge_count(), 0), 1, std::move(planted), alpha,
                         min_len, seed};
    for (const auto& cl : inst.clauses) {
        const int l = cl.length();
        if (l < 4 || l % 2 != 0 || static_cast<int>(cl.couplings.size()) != l)
            throw std::invalid_argument("clause must be an even loop of length >= 4");
        for (int k = 0; k < l; ++k) {
            const int e = g.edge_index(cl.path[k], cl.path[(k + 1) % l]);
            if (e < 0) throw std::invalid_argument("clause path leaves the graph");
            inst.raw_couplings[e] += cl.couplings[k];
        }
    }
    int scale = 0;
    for (int j : inst.raw_couplings) scale = std::max(scale, std::abs(j));
    if (!inst.clauses.empty() && scale == 0) throw std::invalid_argument("all raw couplings cancelled to zero");
    inst.scale_factor = std::max(scale, 1);
    return inst;
}

PlantedInstance assemble_instance(const ChimeraGraph& g, const Rational& alpha, std::uint64_t seed, int min_len) {
    const int m = clause_count_for(alpha, static_cast<int>(g.vertex_count()));
    if (m < 1) throw std::invalid_argument("clause density " + alpha.str() + " gives zero clauses");
    SpinConfig planted = plant_solution(g, derive_seed(seed, {1}));
    Rng walk_rng(derive_seed(seed, {2}));
    Rng flip_rng(derive_seed(seed, {3}));
    std::vector<LoopClause> clauses;
    clauses.reserve(m);
    for (int j = 0; j < m; ++j) clauses.push_back(make_clause(random_loop(g, walk_rng, min_len), planted, flip_rng));
    return instance_from_clauses(g, std::move(clauses), std::move(planted), alpha, min_len, seed);
}

std::int64_t raw_energy(const PlantedInstance& inst, const SpinConfig& c) {
    check_config(inst.graph, c);
    std::int64_t e = 0;
    const auto& edges = inst.graph.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) e += inst.raw_couplings[k] * c[edges[k].first] * c[edges[k].second];
    return e;
}

Rational energy(const PlantedInstance& inst, const SpinConfig& c) {
    return {raw_energy(inst, c), inst.scale_factor};
}

Rational frustration_fraction(const PlantedInstance& inst) {
    const auto& edges = inst.graph.edges();
    if (edges.empty()) return Rational(0);
    std::int64_t frustrated = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const int j = inst.raw_couplings[k];
        if (j != 0 && j * inst.planted[edges[k].first] * inst.planted[edges[k].second] > 0) ++frustrated;
    }
    return {frustrated, static_cast<std::int64_t>(edges.size())};
}

std::string write_instance(const PlantedInstance& inst) {
    std::ostringstream out;
    const auto& g = inst.graph;
    out << "# frustbench instance v1\n[meta]\n";
    out << "L " << g.L() << '\n';
    out << "alpha " << inst.alpha.str() << '\n';
    out << "N " << g.vertex_count() << '\n';
    out << "M " << inst.clause_count() << '\n';
    out << "min_len " << inst.min_len << '\n';
    out << "seed " << inst.seed << '\n';
    out << "broken";
    for (int b : g.broken()) out << ' ' << b;
    out << '\n';
    out << "scale_factor " << inst.scale_factor << '\n';
    out << "ground_energy " << inst.ground_energy().str() << '\n';
    out << "[planted]\n";
    for (int v : g.vertices()) out << v << ':' << static_cast<int>(inst.planted[v]) << '\n';
    out << "[clauses]\n";
    for (const auto& cl : inst.clauses) {
        for (int v : cl.path) out << v << ' ';
        out << "| " << cl.flipped << '\n';
    }
    out << "[couplings]\n";
    const auto& edges = g.edges();
    for (std::size_t k = 0; k < edges.size(); ++k)
        out << edges[k].first << ' ' << edges[k].second << ' ' << inst.raw_couplings[k] << '\n';
    return out.str();
}

PlantedInstance parse_instance(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line, section;
    int L = 0, m = -1, min_len = 8, scale = -1;
    std::uint64_t seed = 0;
    Rational alpha, ground;
    std::vector<int> broken;
    std::vector<std::pair<int, int>> planted_lines;
    std::vector<std::pair<LoopPath, int>> clause_lines;
    std::vector<std::tuple<int, int, int>> coupling_lines;
    auto fail = [](const std::string& what) { throw std::invalid_argument("instance file: " + what); };

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            section = line;
            continue;
        }
        std::istringstream ls(line);
        if (section == "[meta]") {
            std::string key;
            ls >> key;
            if (key == "L") ls >> L;
            else if (key == "alpha") {
                std::string a;
                ls >> a;
                alpha = Rational::parse(a);
            } else if (key == "M") ls >> m;
            else if (key == "N") continue;
            else if (key == "min_len") ls >> min_len;
            else if (key == "seed") ls >> seed;
            else if (key == "scale_factor") ls >> scale;
            else if (key == "ground_energy") {
                std::string gtext;
                ls >> gtext;
                ground = Rational::parse(gtext);
            } else if (key == "broken") {
                int b;
                while (ls >> b) broken.push_back(b);
            } else fail("unknown meta key '" + key + "'");
        } else if (section == "[planted]") {
            auto colon = line.find(':');
            if (colon == std::string::npos) fail("bad planted line '" + line + "'");
            planted_lines.emplace_back(std::stoi(line.substr(0, colon)), std::stoi(line.substr(colon + 1)));
        } else if (section == "[clauses]") {
            auto bar = line.find('|');
            if (bar == std::string::npos) fail("bad clause line '" + line + "'");
            std::istringstream ps(line.substr(0, bar));
            LoopPath path;
            int v;
            while (ps >> v) path.push_back(v);
            clause_lines.emplace_back(std::move(path), std::stoi(line.substr(bar + 1)));
        } else if (section == "[couplings]") {
            int u, v, j;
            if (!(ls >> u >> v >> j)) fail("bad coupling line '" + line + "'");
            coupling_lines.emplace_back(u, v, j);
        } else {
            fail("content outside a section");
        }
    }

    ChimeraGraph g(L, broken);
    SpinConfig planted(g.ideal_vertex_count(), 0);
    for (auto [v, s] : planted_lines) {
        if (!g.is_active(v)) fail("planted spin on inactive vertex");
        planted[v] = static_cast<std::int8_t>(s);
    }
    std::vector<LoopClause> clauses;
    for (auto& [path, flipped] : clause_lines) {
        const int l = static_cast<int>(path.size());
        if (flipped < 0 || flipped >= l) fail("flipped edge index out of range");
        LoopClause cl{std::move(path), std::vector<std::int8_t>(l), flipped};
        for (int k = 0; k < l; ++k)
            cl.couplings[k] = static_cast<std::int8_t>(-planted[cl.path[k]] * planted[cl.path[(k + 1) % l]]);
        cl.couplings[flipped] = static_cast<std::int8_t>(-cl.couplings[flipped]);
        clauses.push_back(std::move(cl));
    }
    auto inst = instance_from_clauses(g, std::move(clauses), std::move(planted), alpha, min_len, seed);
    if (m >= 0 && m != inst.clause_count()) fail("M does not match clause count");
    if (scale >= 0 && scale != inst.scale_factor) fail("scale_factor does not match clauses");
    if (ground != inst.ground_energy()) fail("ground_energy does not match clauses");
    if (coupling_lines.size() != g.edge_count()) fail("couplings section must list every edge");
    for (std::size_t k = 0; k < coupling_lines.size(); ++k) {
        auto [u, v, j] = coupling_lines[k];
        if (Edge{u, v} != g.edges()[k] || j != inst.raw_couplings[k]) fail("coupling line disagrees with clauses");
    }
    return inst;
}

PlantedInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

// ---------------------------------------------------------------------------

double IsingInstance::dynamics_energy(const SpinConfig& c) const {
    double e = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) e += weights[k] * c[edges[k].first] * c[edges[k].second];
    return e;
}

std::int64_t IsingInstance::nominal_raw_energy(const SpinConfig& c) const {
    std::int64_t e = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) e += raw[k] * c[edges[k].first] * c[edges[k].second];
    return e;
}

namespace {

IsingInstance compile(const PlantedInstance& inst, std::vector<double> weights, bool noisy) {
    const auto& g = inst.graph;
    IsingInstance out;
    out.L = g.L();
    out.n = g.ideal_vertex_count();
    out.active = g.vertices();
    out.sweep_order = g.partition_a();
    out.sweep_order.insert(out.sweep_order.end(), g.partition_b().begin(), g.partition_b().end());
    out.edges = g.edges();
    out.weights = std::move(weights);
    out.raw = inst.raw_couplings;
    out.scale_factor = inst.scale_factor;
    out.ground_raw = inst.ground_energy_raw();
    out.noisy = noisy;
    out.nbr_offset.assign(out.n + 1, 0);
    for (int v = 0; v < out.n; ++v) {
        out.nbr_offset[v + 1] = out.nbr_offset[v];
        if (!g.is_active(v)) continue;
        const auto nb = g.neighbors(v);
        const auto ie = g.incident_edges(v);
        for (std::size_t p = 0; p < nb.size(); ++p) {
            out.nbr.push_back(nb[p]);
            out.nbr_weight.push_back(out.weights[ie[p]]);
            out.nbr_raw.push_back(out.raw[ie[p]]);
        }
        out.nbr_offset[v + 1] = static_cast<int>(out.nbr.size());
    }
    return out;
}

}  // namespace

IsingInstance to_ising(const PlantedInstance& inst) {
    std::vector<double> w(inst.raw_couplings.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = inst.coupling(static_cast<int>(k)).to_double();
    return compile(inst, std::move(w), false);
}

IsingInstance inject_noise(const PlantedInstance& inst, double level, Rng& rng) {
    if (level < 0) throw std::invalid_argument("inject_noise: level must be >= 0");
    std::vector<double> w(inst.raw_couplings.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = inst.coupling(static_cast<int>(k)).to_double();
        if (inst.raw_couplings[k] != 0) w[k] += level * (2.0 * rng.uniform() - 1.0);
    }
    return compile(inst, std::move(w), level > 0);
}

}  // namespace frustbench
