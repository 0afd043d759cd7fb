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
#include <vector>

#include "frustbench/instance.hpp"
#include "frustbench/records.hpp"

namespace frustbench {

/// Allowed assignments over an ascending scope. Rows are packed bitsets,
/// bit set meaning spin +1, words() 64-bit words per row.
class ConstraintTable {
  public:
    ConstraintTable() = default;
    explicit ConstraintTable(std::vector<int> scope);

    const std::vector<int>& scope() const { return scope_; }
    std::size_t arity() const { return scope_.size(); }
    std::size_t words() const { return words_; }
    std::size_t row_count() const { return words_ == 0 ? empty_rows_ : bits_.size() / words_; }
    bool empty() const { return row_count() == 0; }

    /// Spin (+1/-1) of scope position `pos` in `row`.
    int spin(std::size_t row, std::size_t pos) const {
        return (bits_[row * words_ + pos / 64] >> (pos % 64)) & 1 ? 1 : -1;
    }
    const std::uint64_t* row_bits(std::size_t row) const { return bits_.data() + row * words_; }
    /// Position of vertex v in the scope, -1 when absent.
    int position(int v) const;

    /// Append a row given one spin per scope position.
    void add_row(const std::vector<std::int8_t>& spins);
    void add_row_bits(const std::uint64_t* bits);
    /// Sort rows and drop duplicates.
    void normalize();

  private:
    std::vector<int> scope_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::size_t empty_rows_ = 0;  ///< zero-arity tables: 0 (false) or 1 (true)
};

/// Thrown when an intermediate table would exceed the row budget.
class TableBudgetExceeded : public std::runtime_error {
  public:
    TableBudgetExceeded(int vertex, std::size_t rows, std::size_t budget);
    int vertex;
    std::size_t rows;
    std::size_t budget;
};

/// Clause minimizers over the clause's path vertices. Loops up to
/// exhaustive_max_len are scanned over all 2^l states; longer loops use the
/// closed form (exactly one violated edge, both global orientations).
ConstraintTable clause_table(const LoopClause& clause, int exhaustive_max_len = 16);
std::vector<ConstraintTable> clause_tables(const PlantedInstance& inst, int exhaustive_max_len = 16);

enum class OrderHeuristic { MinDegree, MinFill };

/// Greedy elimination order over the vertices touched by `tables`, with
/// fill-in; ties go to the lowest id.
std::vector<int> elimination_order(const std::vector<ConstraintTable>& tables,
                                   OrderHeuristic h = OrderHeuristic::MinDegree);
std::vector<int> elimination_order(const PlantedInstance& inst, OrderHeuristic h = OrderHeuristic::MinDegree);

/// Natural join; throws TableBudgetExceeded past `budget` rows.
ConstraintTable join(const ConstraintTable& a, const ConstraintTable& b, std::size_t budget = std::size_t{1} << 24);
/// Distinct rows with vertex v removed.
ConstraintTable project_out(const ConstraintTable& t, int v);

struct Elimination {
    bool contradiction = false;
    int contradiction_vertex = -1;
    std::vector<int> order;
    std::vector<ConstraintTable> buckets;  ///< buckets[i] joins every table holding order[i]
    std::size_t max_rows = 0;
};

/// Bucket elimination along `order`, which must cover every scoped vertex.
Elimination eliminate(std::vector<ConstraintTable> tables, const std::vector<int>& order,
                      std::size_t row_budget = std::size_t{1} << 24);

struct EnumerateOptions {
    std::int64_t cap = 100000;
    std::size_t row_budget = std::size_t{1} << 24;
    OrderHeuristic heuristic = OrderHeuristic::MinDegree;
    std::size_t keep_solutions = 1000;  ///< solutions stored; all emitted ones are verified
    int exhaustive_max_len = 16;
};

struct EnumerationResult {
    std::vector<SpinConfig> solutions;  ///< unused qubits set to +1
    std::int64_t raw_count = 0;
    bool capped = false;   ///< more than `cap` solutions exist; raw_count == cap
    bool aborted = false;  ///< row budget exceeded; counts unknown
    std::string abort_reason;
    int n_uq = 0;
    std::string reported_degeneracy;  ///< raw_count * 2^n_uq, decimal
    std::size_t max_rows = 0;
};

EnumerationResult enumerate_solutions(const PlantedInstance& inst, const EnumerateOptions& opt = {});

/// raw * 2^n_uq as a decimal string.
std::string scaled_degeneracy(std::int64_t raw, int n_uq);

DegeneracyRecord to_record(const EnumerationResult& r, const std::string& instance_id);

struct BruteForceResult {
    std::int64_t min_raw = 0;
    std::int64_t count = 0;  ///< minimizers over participating spins
};

/// Gray-code scan over participating spins; at most 30 of them.
BruteForceResult brute_force_ground(const PlantedInstance& inst);

}  // namespace frustbench
