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
#include <functional>
#include <string>
#include <vector>

namespace frustbench {

/// One solver's aggregate outcome on one instance. Serialized as one JSON
/// object per line; externally produced records (e.g. hardware runs) use the
/// same shape.
struct RunRecord {
    std::string instance_id;
    std::string solver;
    std::string params_hash;
    std::int64_t runs = 0;
    std::int64_t successes = 0;
    double tau_per_run_us = 0;
    std::string mode;
    // Optional context. L and alpha fall back to parsing instance_id.
    int L = 0;
    std::string alpha;
    std::int64_t sweeps = 0;
    std::string params;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

std::string to_json_line(const RunRecord& r);
RunRecord run_record_from_json(const std::string& line);
std::vector<RunRecord> read_run_records(const std::string& path);
void append_run_records(const std::string& path, const std::vector<RunRecord>& records);

/// Degeneracy of one instance's ground state (see enumerator.hpp).
struct DegeneracyRecord {
    std::string instance_id;
    std::int64_t raw_count = 0;
    bool capped = false;
    bool aborted = false;  ///< memory guard tripped; counts unknown
    int n_uq = 0;
    std::string reported_degeneracy;  ///< decimal, raw_count * 2^n_uq

    friend bool operator==(const DegeneracyRecord&, const DegeneracyRecord&) = default;
};

std::string to_json_line(const DegeneracyRecord& r);
DegeneracyRecord degeneracy_record_from_json(const std::string& line);
std::vector<DegeneracyRecord> read_degeneracy_records(const std::string& path);

/// Instance ids look like "L3/a1/10/7": size, clause density, index.
std::string make_instance_id(int L, const std::string& alpha, int index);
/// Splits an id produced by make_instance_id; returns false otherwise.
bool split_instance_id(const std::string& id, int& L, std::string& alpha, int& index);

/// Canonical 16-hex-digit FNV-1a hash of a canonical parameter string.
std::string params_hash(const std::string& canonical_params);

/// Runs body(i) for i in [0, n) on `workers` threads (1 runs inline).
/// Exceptions from any body are rethrown after all threads join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

/// Worker count from FRUSTBENCH_WORKERS, else hardware concurrency.
int default_workers();

}  // namespace frustbench
