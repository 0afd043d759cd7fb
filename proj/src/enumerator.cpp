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

#include "frustbench/enumerator.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

namespace frustbench {

ConstraintTable::ConstraintTable(std::vector<int> scope) : scope_(std::move(scope)) {
    if (!std::is_sorted(scope_.begin(), scope_.end()) ||
        std::adjacent_find(scope_.begin(), scope_.end()) != scope_.end())
        throw std::invalid_argument("constraint table: scope must be strictly ascending");
    words_ = (scope_.size() + 63) / 64;
}

int ConstraintTable::position(int v) const {
    auto it = std::lower_bound(scope_.begin(), scope_.end(), v);
    return it != scope_.end() && *it == v ? static_cast<int>(it - scope_.begin()) : -1;
}

void ConstraintTable::add_row(const std::vector<std::int8_t>& spins) {
    if (spins.size() != scope_.size()) throw std::invalid_argument("constraint table: row arity");
    if (words_ == 0) {
        empty_rows_ = 1;
        return;
    }
    const std::size_t base = bits_.size();
    bits_.resize(base + words_, 0);
    for (std::size_t i = 0; i < spins.size(); ++i)
        if (spins[i] == 1) bits_[base + i / 64] |= std::uint64_t{1} << (i % 64);
}

void ConstraintTable::add_row_bits(const std::uint64_t* bits) {
    if (words_ == 0) {
        empty_rows_ = 1;
        return;
    }
    bits_.insert(bits_.end(), bits, bits + words_);
}

void ConstraintTable::normalize() {
    if (words_ == 0) return;
    const std::size_t n = row_count();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(row_bits(a), row_bits(a) + words_, row_bits(b), row_bits(b) + words_);
    };
    std::sort(idx.begin(), idx.end(), less);
    std::vector<std::uint64_t> out;
    out.reserve(bits_.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && std::equal(row_bits(idx[k]), row_bits(idx[k]) + words_, row_bits(idx[k - 1]))) continue;
        out.insert(out.end(), row_bits(idx[k]), row_bits(idx[k]) + words_);
    }
    bits_ = std::move(out);
}

TableBudgetExceeded::TableBudgetExceeded(int v, std::size_t r, std::size_t b)
    : std::runtime_error("row budget exceeded eliminating vertex " + std::to_string(v) + ": " + std::to_string(r) +
                         " rows > " + std::to_string(b)),
      vertex(v), rows(r), budget(b) {}

ConstraintTable clause_table(const LoopClause& clause, int exhaustive_max_len) {
    const int l = clause.length();
    std::vector<int> scope(clause.path.begin(), clause.path.end());
    std::sort(scope.begin(), scope.end());
    ConstraintTable t(scope);
    // path position -> scope position
    std::vector<int> at(l);
    for (int k = 0; k < l; ++k) at[k] = t.position(clause.path[k]);
    std::vector<std::int8_t> loop(l), row(l);
    auto emit = [&] {
        for (int k = 0; k < l; ++k) row[at[k]] = loop[k];
        t.add_row(row);
    };
    auto loop_energy = [&] {
        int e = 0;
        for (int k = 0; k < l; ++k) e += clause.couplings[k] * loop[k] * loop[(k + 1) % l];
        return e;
    };
    if (l <= exhaustive_max_len) {
        int best = std::numeric_limits<int>::max();
        std::vector<std::uint32_t> argmins;
        for (std::uint32_t m = 0; m < (std::uint32_t{1} << l); ++m) {
            for (int k = 0; k < l; ++k) loop[k] = (m >> k) & 1 ? 1 : -1;
            const int e = loop_energy();
            if (e < best) {
                best = e;
                argmins.clear();
            }
            if (e == best) argmins.push_back(m);
        }
        for (auto m : argmins) {
            for (int k = 0; k < l; ++k) loop[k] = (m >> k) & 1 ? 1 : -1;
            emit();
        }
    } else {
        // Frustrated loop: the minimizers violate exactly one edge.
        for (int bad = 0; bad < l; ++bad)
            for (int start : {1, -1}) {
                loop[0] = static_cast<std::int8_t>(start);
                for (int k = 0; k + 1 < l; ++k) {
                    const int sat = k == bad ? 1 : -1;  // sign of J s_k s_{k+1}
                    loop[k + 1] = static_cast<std::int8_t>(sat * clause.couplings[k] * loop[k]);
                }
                if (loop_energy() != -(l - 2)) throw std::logic_error("clause_table: loop is not singly frustrated");
                emit();
            }
    }
    t.normalize();
    return t;
}

std::vector<ConstraintTable> clause_tables(const PlantedInstance& inst, int exhaustive_max_len) {
    std::vector<ConstraintTable> out;
    out.reserve(inst.clauses.size());
    for (const auto& c : inst.clauses) out.push_back(clause_table(c, exhaustive_max_len));
    return out;
}

std::vector<int> elimination_order(const std::vector<ConstraintTable>& tables, OrderHeuristic h) {
    std::map<int, std::set<int>> adj;
    for (const auto& t : tables)
        for (int u : t.scope()) {
            auto& a = adj[u];
            for (int v : t.scope())
                if (v != u) a.insert(v);
        }
    auto fill_of = [&](int v) {
        const auto& nb = adj[v];
        std::size_t missing = 0;
        for (auto i = nb.begin(); i != nb.end(); ++i)
            for (auto j = std::next(i); j != nb.end(); ++j)
                if (!adj[*i].count(*j)) ++missing;
        return missing;
    };
    std::vector<int> order;
    order.reserve(adj.size());
    while (!adj.empty()) {
        int best = -1;
        std::size_t best_score = std::numeric_limits<std::size_t>::max();
        for (const auto& [v, nb] : adj) {
            const std::size_t score = h == OrderHeuristic::MinDegree ? nb.size() : fill_of(v);
            if (score < best_score) {
                best_score = score;
                best = v;
            }
        }
        const std::set<int> nb = std::move(adj[best]);
        adj.erase(best);
        for (int u : nb) {
            auto& a = adj[u];
            a.erase(best);
            for (int w : nb)
                if (w != u) a.insert(w);
        }
        order.push_back(best);
    }
    return order;
}

std::vector<int> elimination_order(const PlantedInstance& inst, OrderHeuristic h) {
    return elimination_order(clause_tables(inst), h);
}

namespace {

/// Byte key of the spins at `positions` of a row.
std::string row_key(const std::uint64_t* bits, const std::vector<int>& positions) {
    std::string key((positions.size() + 7) / 8, '\0');
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const int p = positions[i];
        if ((bits[p / 64] >> (p % 64)) & 1) key[i / 8] = static_cast<char>(key[i / 8] | (1 << (i % 8)));
    }
    return key;
}

void set_bit(std::uint64_t* bits, int p) { bits[p / 64] |= std::uint64_t{1} << (p % 64); }
bool get_bit(const std::uint64_t* bits, int p) { return (bits[p / 64] >> (p % 64)) & 1; }

}  // namespace

ConstraintTable join(const ConstraintTable& a, const ConstraintTable& b, std::size_t budget) {
    std::vector<int> scope;
    std::set_union(a.scope().begin(), a.scope().end(), b.scope().begin(), b.scope().end(), std::back_inserter(scope));
    ConstraintTable out(scope);
    std::vector<int> a_to(a.arity()), b_to(b.arity());
    for (std::size_t i = 0; i < a.arity(); ++i) a_to[i] = out.position(a.scope()[i]);
    for (std::size_t i = 0; i < b.arity(); ++i) b_to[i] = out.position(b.scope()[i]);
    std::vector<int> a_shared, b_shared, b_only;
    for (std::size_t i = 0; i < b.arity(); ++i) {
        const int pa = a.position(b.scope()[i]);
        if (pa >= 0) {
            a_shared.push_back(pa);
            b_shared.push_back(static_cast<int>(i));
        } else {
            b_only.push_back(static_cast<int>(i));
        }
    }
    if (out.words() == 0) {
        if (!a.empty() && !b.empty()) out.add_row({});
        return out;
    }
    std::unordered_map<std::string, std::vector<std::size_t>> by_key;
    for (std::size_t r = 0; r < b.row_count(); ++r) by_key[row_key(b.row_bits(r), b_shared)].push_back(r);
    std::vector<std::uint64_t> row(out.words());
    std::size_t rows = 0;
    for (std::size_t ra = 0; ra < a.row_count(); ++ra) {
        auto it = by_key.find(row_key(a.row_bits(ra), a_shared));
        if (it == by_key.end()) continue;
        std::fill(row.begin(), row.end(), 0);
        for (std::size_t i = 0; i < a.arity(); ++i)
            if (get_bit(a.row_bits(ra), static_cast<int>(i))) set_bit(row.data(), a_to[i]);
        for (std::size_t rb : it->second) {
            std::vector<std::uint64_t> full = row;
            for (int i : b_only)
                if (get_bit(b.row_bits(rb), i)) set_bit(full.data(), b_to[i]);
            if (++rows > budget) throw TableBudgetExceeded(-1, rows, budget);
            out.add_row_bits(full.data());
        }
    }
    return out;
}

ConstraintTable project_out(const ConstraintTable& t, int v) {
    const int pv = t.position(v);
    if (pv < 0) return t;
    std::vector<int> scope;
    std::vector<int> keep;
    for (std::size_t i = 0; i < t.arity(); ++i)
        if (static_cast<int>(i) != pv) {
            scope.push_back(t.scope()[i]);
            keep.push_back(static_cast<int>(i));
        }
    ConstraintTable out(scope);
    if (out.words() == 0) {
        if (!t.empty()) out.add_row({});
        return out;
    }
    std::vector<std::uint64_t> row(out.words());
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        std::fill(row.begin(), row.end(), 0);
        for (std::size_t i = 0; i < keep.size(); ++i)
            if (get_bit(t.row_bits(r), keep[i])) set_bit(row.data(), static_cast<int>(i));
        out.add_row_bits(row.data());
    }
    out.normalize();
    return out;
}

Elimination eliminate(std::vector<ConstraintTable> tables, const std::vector<int>& order, std::size_t row_budget) {
    Elimination e;
    e.order = order;
    e.buckets.reserve(order.size());
    for (int v : order) {
        std::vector<ConstraintTable> mine;
        std::vector<ConstraintTable> rest;
        for (auto& t : tables) (t.position(v) >= 0 ? mine : rest).push_back(std::move(t));
        tables = std::move(rest);
        if (mine.empty()) {
            // v is unconstrained here: both values allowed
            ConstraintTable free_v({v});
            free_v.add_row({1});
            free_v.add_row({-1});
            free_v.normalize();
            mine.push_back(std::move(free_v));
        }
        std::sort(mine.begin(), mine.end(),
                  [](const auto& x, const auto& y) { return x.row_count() < y.row_count(); });
        ConstraintTable joined = std::move(mine.front());
        try {
            for (std::size_t i = 1; i < mine.size(); ++i) joined = join(joined, mine[i], row_budget);
        } catch (const TableBudgetExceeded& ex) {
            throw TableBudgetExceeded(v, ex.rows, ex.budget);
        }
        e.max_rows = std::max(e.max_rows, joined.row_count());
        if (joined.empty()) {
            e.contradiction = true;
            e.contradiction_vertex = v;
            e.buckets.push_back(std::move(joined));
            return e;
        }
        ConstraintTable reduced = project_out(joined, v);
        if (reduced.arity() > 0) tables.push_back(std::move(reduced));
        e.buckets.push_back(std::move(joined));
    }
    for (const auto& t : tables)
        if (t.arity() > 0) throw std::invalid_argument("eliminate: order leaves scoped vertices uneliminated");
    return e;
}

std::string scaled_degeneracy(std::int64_t raw, int n_uq) {
    boost::multiprecision::cpp_int d = raw;
    d <<= n_uq;
    return d.str();
}

EnumerationResult enumerate_solutions(const PlantedInstance& inst, const EnumerateOptions& opt) {
    if (opt.cap < 1) throw std::invalid_argument("enumerate_solutions: cap must be >= 1");
    EnumerationResult res;
    const auto participating = inst.participating();
    res.n_uq = static_cast<int>(inst.graph.vertex_count() - participating.size());

    auto tables = clause_tables(inst, opt.exhaustive_max_len);
    const auto order = elimination_order(tables, opt.heuristic);
    Elimination el;
    try {
        el = eliminate(std::move(tables), order, opt.row_budget);
    } catch (const TableBudgetExceeded& ex) {
        res.aborted = true;
        res.abort_reason = ex.what();
        res.reported_degeneracy = "unknown";
        return res;
    }
    if (el.contradiction) throw std::logic_error("enumerate_solutions: planted instance produced a contradiction");
    res.max_rows = el.max_rows;

    // bucket i: key over the other scope vertices -> allowed values of order[i]
    const std::size_t n = order.size();
    std::vector<std::vector<int>> others(n);
    std::vector<std::unordered_map<std::string, std::uint8_t>> allowed(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& b = el.buckets[i];
        const int pv = b.position(order[i]);
        std::vector<int> pos;
        for (std::size_t k = 0; k < b.arity(); ++k)
            if (static_cast<int>(k) != pv) {
                others[i].push_back(b.scope()[k]);
                pos.push_back(static_cast<int>(k));
            }
        for (std::size_t r = 0; r < b.row_count(); ++r)
            allowed[i][row_key(b.row_bits(r), pos)] |= b.spin(r, pv) == 1 ? 2 : 1;
    }

    const IsingInstance ising = to_ising(inst);
    SpinConfig spins(inst.graph.ideal_vertex_count(), 0);
    for (int v : inst.graph.vertices()) spins[v] = 1;
    std::string key;
    bool stop = false;
    std::function<void(std::size_t)> extend = [&](std::size_t depth) {
        if (stop) return;
        if (depth == n) {
            if (res.raw_count == opt.cap) {
                res.capped = true;
                stop = true;
                return;
            }
            if (ising.nominal_raw_energy(spins) != ising.ground_raw)
                throw std::logic_error("enumerate_solutions: emitted configuration misses the ground energy");
            ++res.raw_count;
            if (res.solutions.size() < opt.keep_solutions) res.solutions.push_back(spins);
            return;
        }
        const std::size_t i = n - 1 - depth;
        const auto& oth = others[i];
        key.assign((oth.size() + 7) / 8, '\0');
        for (std::size_t k = 0; k < oth.size(); ++k)
            if (spins[oth[k]] == 1) key[k / 8] = static_cast<char>(key[k / 8] | (1 << (k % 8)));
        auto it = allowed[i].find(key);
        if (it == allowed[i].end()) return;
        const std::uint8_t mask = it->second;
        const int v = order[i];
        for (int s : {-1, 1}) {
            if (!(mask & (s == 1 ? 2 : 1))) continue;
            spins[v] = static_cast<std::int8_t>(s);
            extend(depth + 1);
            if (stop) break;
        }
        spins[v] = 1;
    };
    extend(0);
    res.reported_degeneracy = scaled_degeneracy(res.raw_count, res.n_uq);
    return res;
}

DegeneracyRecord to_record(const EnumerationResult& r, const std::string& instance_id) {
    DegeneracyRecord d;
    d.instance_id = instance_id;
    d.raw_count = r.raw_count;
    d.capped = r.capped || r.aborted;
    d.aborted = r.aborted;
    d.n_uq = r.n_uq;
    d.reported_degeneracy = r.reported_degeneracy;
    return d;
}

BruteForceResult brute_force_ground(const PlantedInstance& inst) {
    const auto part = inst.participating();
    const int p = static_cast<int>(part.size());
    if (p > 30) throw std::invalid_argument("brute_force_ground: more than 30 participating spins");
    const IsingInstance ising = to_ising(inst);
    SpinConfig s(inst.graph.ideal_vertex_count(), 0);
    for (int v : inst.graph.vertices()) s[v] = 1;
    for (int v : part) s[v] = -1;
    std::int64_t e = ising.nominal_raw_energy(s);
    BruteForceResult out{e, 1};
    const std::uint64_t total = std::uint64_t{1} << p;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int bit = std::countr_zero(k);
        const int v = part[bit];
        std::int64_t local = 0;
        for (int j = ising.nbr_offset[v]; j < ising.nbr_offset[v + 1]; ++j) local += ising.nbr_raw[j] * s[ising.nbr[j]];
        e -= 2 * s[v] * local;
        s[v] = static_cast<std::int8_t>(-s[v]);
        if (e < out.min_raw) {
            out.min_raw = e;
            out.count = 1;
        } else if (e == out.min_raw) {
            ++out.count;
        }
    }
    return out;
}

}  // namespace frustbench
