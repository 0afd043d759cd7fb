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

#include "frustbench/records.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "frustbench/rng.hpp"
#include "json.hpp"

namespace frustbench {

using nlohmann::json;

std::string to_json_line(const RunRecord& r) {
    json j;
    j["instance_id"] = r.instance_id;
    j["solver"] = r.solver;
    j["params_hash"] = r.params_hash;
    j["runs"] = r.runs;
    j["successes"] = r.successes;
    j["tau_per_run_us"] = r.tau_per_run_us;
    j["mode"] = r.mode;
    if (r.L > 0) j["L"] = r.L;
    if (!r.alpha.empty()) j["alpha"] = r.alpha;
    if (r.sweeps > 0) j["sweeps"] = r.sweeps;
    if (!r.params.empty()) j["params"] = r.params;
    return j.dump();
}

RunRecord run_record_from_json(const std::string& line) {
    const json j = json::parse(line);
    RunRecord r;
    r.instance_id = j.at("instance_id").get<std::string>();
    r.solver = j.at("solver").get<std::string>();
    r.params_hash = j.at("params_hash").get<std::string>();
    r.runs = j.at("runs").get<std::int64_t>();
    r.successes = j.at("successes").get<std::int64_t>();
    r.tau_per_run_us = j.at("tau_per_run_us").get<double>();
    r.mode = j.at("mode").get<std::string>();
    r.L = j.value("L", 0);
    r.alpha = j.value("alpha", std::string{});
    r.sweeps = j.value("sweeps", std::int64_t{0});
    r.params = j.value("params", std::string{});
    if (r.L == 0 || r.alpha.empty()) {
        int L = 0, idx = 0;
        std::string a;
        if (split_instance_id(r.instance_id, L, a, idx)) {
            if (r.L == 0) r.L = L;
            if (r.alpha.empty()) r.alpha = a;
        }
    }
    if (r.runs < 1 || r.successes < 0 || r.successes > r.runs)
        throw std::invalid_argument("run record: need 0 <= successes <= runs and runs >= 1");
    return r;
}

namespace {

template <class F>
void for_each_line(const std::string& path, F&& f) {
    std::ifstream in(path);
    if (!in) return;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') f(line);
}

}  // namespace

std::vector<RunRecord> read_run_records(const std::string& path) {
    std::vector<RunRecord> out;
    for_each_line(path, [&](const std::string& l) { out.push_back(run_record_from_json(l)); });
    return out;
}

void append_run_records(const std::string& path, const std::vector<RunRecord>& records) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + path);
    for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::string to_json_line(const DegeneracyRecord& r) {
    json j;
    j["instance_id"] = r.instance_id;
    j["raw_count"] = r.raw_count;
    j["capped"] = r.capped;
    j["n_uq"] = r.n_uq;
    j["reported_degeneracy"] = r.reported_degeneracy;
    if (r.aborted) j["aborted"] = true;
    return j.dump();
}

DegeneracyRecord degeneracy_record_from_json(const std::string& line) {
    const json j = json::parse(line);
    DegeneracyRecord r;
    r.instance_id = j.at("instance_id").get<std::string>();
    r.raw_count = j.at("raw_count").get<std::int64_t>();
    r.capped = j.at("capped").get<bool>();
    r.n_uq = j.at("n_uq").get<int>();
    r.reported_degeneracy = j.at("reported_degeneracy").get<std::string>();
    r.aborted = j.value("aborted", false);
    return r;
}

std::vector<DegeneracyRecord> read_degeneracy_records(const std::string& path) {
    std::vector<DegeneracyRecord> out;
    for_each_line(path, [&](const std::string& l) { out.push_back(degeneracy_record_from_json(l)); });
    return out;
}

std::string make_instance_id(int L, const std::string& alpha, int index) {
    return "L" + std::to_string(L) + "/a" + alpha + "/" + std::to_string(index);
}

bool split_instance_id(const std::string& id, int& L, std::string& alpha, int& index) {
    if (id.size() < 2 || id[0] != 'L') return false;
    const auto s1 = id.find("/a");
    const auto s2 = id.rfind('/');
    if (s1 == std::string::npos || s2 == std::string::npos || s2 <= s1 + 1) return false;
    try {
        L = std::stoi(id.substr(1, s1 - 1));
        alpha = id.substr(s1 + 2, s2 - s1 - 2);
        index = std::stoi(id.substr(s2 + 1));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

std::string params_hash(const std::string& canonical_params) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_params)));
    return buf;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const auto count = std::min<std::size_t>(workers, n);
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

int default_workers() {
    if (const char* env = std::getenv("FRUSTBENCH_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace frustbench
