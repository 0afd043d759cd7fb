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

#include "frustbench/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "frustbench/enumerator.hpp"

namespace frustbench {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("plan: " + key + " expects an integer, got '" + v + "'");
    return static_cast<int>(x);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("plan: " + key + " expects a number, got '" + v + "'");
    return x;
}

/// "a..b" integer ranges mixed with plain values.
std::vector<int> int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (const auto& item : split_list(v)) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(key, item));
            continue;
        }
        const int lo = to_int(key, trim(item.substr(0, dots))), hi = to_int(key, trim(item.substr(dots + 2)));
        for (int x = lo; x <= hi; ++x) out.push_back(x);
    }
    return out;
}

/// Plain rationals or "lo..hi/step".
std::vector<Rational> rational_list(const std::string& v) {
    std::vector<Rational> out;
    for (const auto& item : split_list(v)) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(Rational::parse(item));
            continue;
        }
        const auto slash = item.find('/', dots);
        if (slash == std::string::npos) throw std::invalid_argument("plan: range '" + item + "' needs '/step'");
        const Rational lo = Rational::parse(trim(item.substr(0, dots)));
        const Rational hi = Rational::parse(trim(item.substr(dots + 2, slash - dots - 2)));
        const Rational step = Rational::parse(trim(item.substr(slash + 1)));
        if (step <= Rational(0)) throw std::invalid_argument("plan: range step must be positive");
        for (Rational x = lo; x <= hi; x += step) out.push_back(x);
    }
    return out;
}

std::vector<AnnealMode> mode_list(const std::string& key, const std::string& v) {
    std::vector<AnnealMode> out;
    for (const auto& m : split_list(v)) {
        if (m == "solver" || m == "sas" || m == "sqas") out.push_back(AnnealMode::Solver);
        else if (m == "annealer" || m == "saa" || m == "sqaa") out.push_back(AnnealMode::Annealer);
        else if (m == "both") {
            out.push_back(AnnealMode::Solver);
            out.push_back(AnnealMode::Annealer);
        } else throw std::invalid_argument("plan: " + key + " has unknown mode '" + m + "'");
    }
    return out;
}

std::string resolve(const std::string& base, const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (fs::path(base) / p).lexically_normal().string();
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

ExperimentPlan parse_plan(std::string_view text, const std::string& base_dir) {
    ExperimentPlan p;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("plan line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string v = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw std::invalid_argument("plan: duplicate key '" + key + "'");
        if (key == "L") p.L = int_list(key, v);
        else if (key == "alpha") p.alpha = rational_list(v);
        else if (key == "instances") p.instances = to_int(key, v);
        else if (key == "min_len") p.min_len = to_int(key, v);
        else if (key == "master_seed") p.master_seed = std::stoull(v);
        else if (key == "mask") p.mask = resolve(base_dir, v);
        else if (key == "out") p.out = resolve(base_dir, v);
        else if (key == "solvers") p.solvers = split_list(v);
        else if (key == "sa.sweeps") p.sa_sweeps = int_list(key, v);
        else if (key == "sa.beta_i") p.sa_beta_i = to_double(key, v);
        else if (key == "sa.beta_f") {
            p.sa_beta_f.clear();
            for (const auto& x : split_list(v)) p.sa_beta_f.push_back(to_double(key, x));
        } else if (key == "sa.mode") p.sa_modes = mode_list(key, v);
        else if (key == "sa.runs") p.sa_runs = to_int(key, v);
        else if (key == "sqa.sweeps") p.sqa_sweeps = int_list(key, v);
        else if (key == "sqa.slices") p.sqa_slices = to_int(key, v);
        else if (key == "sqa.beta") p.sqa_beta = to_double(key, v);
        else if (key == "sqa.mode") p.sqa_modes = mode_list(key, v);
        else if (key == "sqa.readout") {
            if (v == "min") p.sqa_readout = SliceReadout::MinSlice;
            else if (v == "random") p.sqa_readout = SliceReadout::RandomSlice;
            else throw std::invalid_argument("plan: sqa.readout must be min or random");
        } else if (key == "sqa.schedule") p.sqa_schedule = resolve(base_dir, v);
        else if (key == "sqa.runs") p.sqa_runs = to_int(key, v);
        else if (key == "sssv.sweeps") p.sssv_sweeps = int_list(key, v);
        else if (key == "sssv.beta") p.sssv_beta = to_double(key, v);
        else if (key == "sssv.schedule") p.sssv_schedule = resolve(base_dir, v);
        else if (key == "sssv.runs") p.sssv_runs = to_int(key, v);
        else if (key == "hfs.stall") p.hfs_stall = to_int(key, v);
        else if (key == "hfs.sampler") {
            if (v == "random") p.hfs_sampler = TreeSampler::Random;
            else if (v == "comb") p.hfs_sampler = TreeSampler::Comb;
            else throw std::invalid_argument("plan: hfs.sampler must be random or comb");
        } else if (key == "hfs.runs") p.hfs_runs = to_int(key, v);
        else if (key == "noise") p.noise = to_double(key, v);
        else if (key == "enumerate.cap") p.enumerate_cap = std::stoll(v);
        else if (key == "analyze.quantiles") {
            p.quantiles.clear();
            for (const auto& x : split_list(v)) p.quantiles.push_back(to_double(key, x));
        } else if (key == "analyze.resamples") p.resamples = to_int(key, v);
        else if (key == "analyze.fit_L_min") p.fit_L_min = to_int(key, v);
        else if (key == "analyze.reference") p.reference = v;
        else if (key == "analyze.distance") {
            if (v == "rms") p.distance = DistanceConvention::Rms;
            else if (v == "literal") p.distance = DistanceConvention::Literal;
            else throw std::invalid_argument("plan: analyze.distance must be rms or literal");
        } else if (key == "analyze.pd") p.pd = to_double(key, v);
        else throw std::invalid_argument("plan: unknown key '" + key + "'");
    }
    if (p.L.empty() || p.alpha.empty()) throw std::invalid_argument("plan: L and alpha must be non-empty");
    for (int L : p.L)
        if (L < 1) throw std::invalid_argument("plan: L values must be >= 1");
    for (const auto& a : p.alpha)
        if (a <= Rational(0)) throw std::invalid_argument("plan: alpha values must be positive");
    if (p.instances < 1) throw std::invalid_argument("plan: instances must be >= 1");
    for (const auto& s : p.solvers)
        if (s != "sa" && s != "sqa" && s != "sssv" && s != "hfs")
            throw std::invalid_argument("plan: unknown solver '" + s + "'");
    return p;
}

ExperimentPlan load_plan(const std::string& path) {
    auto base = fs::path(path).parent_path().string();
    return parse_plan(read_file(path), base.empty() ? "." : base);
}

std::string alpha_label(const Rational& alpha) {
    std::int64_t d = alpha.den();
    int twos = 0, fives = 0;
    while (d % 2 == 0) d /= 2, ++twos;
    while (d % 5 == 0) d /= 5, ++fives;
    if (d != 1) return std::to_string(alpha.num()) + "_" + std::to_string(alpha.den());
    const int digits = std::max(twos, fives);
    std::int64_t scaled = alpha.num() * (static_cast<std::int64_t>(std::pow(10, digits)) / alpha.den());
    std::string s = std::to_string(scaled);
    if (digits == 0) return s;
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return s;
}

std::uint64_t instance_seed(std::uint64_t master_seed, int L, const Rational& alpha, int index) {
    return derive_seed(master_seed, {fnv1a("instance"), static_cast<std::uint64_t>(L),
                                     static_cast<std::uint64_t>(alpha.num()), static_cast<std::uint64_t>(alpha.den()),
                                     static_cast<std::uint64_t>(index)});
}

std::vector<InstanceRef> plan_instances(const ExperimentPlan& plan) {
    std::vector<InstanceRef> out;
    for (int L : plan.L)
        for (const auto& a : plan.alpha)
            for (int i = 0; i < plan.instances; ++i) {
                InstanceRef r;
                r.L = L;
                r.alpha = a;
                r.index = i;
                r.id = make_instance_id(L, alpha_label(a), i);
                r.path = (fs::path(plan.out) / "instances" / ("L" + std::to_string(L)) / ("a" + alpha_label(a)) /
                          (std::to_string(i) + ".inst"))
                             .string();
                out.push_back(std::move(r));
            }
    return out;
}

ChimeraGraph host_graph(const ExperimentPlan& plan, int L) {
    if (plan.mask.empty()) return build_chimera(L);
    const ChimeraGraph full = load_chimera(plan.mask);
    if (L > full.L())
        throw std::invalid_argument("mask graph has L=" + std::to_string(full.L()) + ", plan asks for L=" +
                                    std::to_string(L));
    return full.subgraph(L);
}

CommandStatus cmd_generate(const ExperimentPlan& plan, int workers, std::ostream& log) {
    std::map<int, ChimeraGraph> hosts;
    for (int L : plan.L) hosts.try_emplace(L, host_graph(plan, L));
    const auto refs = plan_instances(plan);
    std::vector<std::string> errors(refs.size());
    std::vector<char> existed(refs.size(), 0);
    parallel_for(refs.size(), workers, [&](std::size_t i) {
        const auto& r = refs[i];
        if (std::filesystem::exists(r.path)) {
            existed[i] = 1;
            return;
        }
        try {
            const auto inst = assemble_instance(hosts.at(r.L), r.alpha, instance_seed(plan.master_seed, r.L, r.alpha, r.index),
                                                plan.min_len);
            write_file(r.path, write_instance(inst));
        } catch (const std::exception& e) {
            errors[i] = std::string("generate L=") + std::to_string(r.L) + " alpha=" + alpha_label(r.alpha) +
                        " index=" + std::to_string(r.index) + ": " + e.what();
        }
    });
    CommandStatus st;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (existed[i]) ++st.skipped;
        else if (errors[i].empty()) ++st.completed;
        else {
            ++st.failed;
            log << errors[i] << '\n';
        }
    }
    log << "generate: " << st.completed << " instances written, " << st.skipped << " present, " << st.failed
        << " failed\n";
    return st;
}

std::vector<McParams> annealer_grid(const ExperimentPlan& plan, const std::string& solver) {
    std::vector<McParams> out;
    if (solver == "sa") {
        for (int s : plan.sa_sweeps)
            for (double bf : plan.sa_beta_f)
                for (auto m : plan.sa_modes) {
                    SaParams p;
                    p.sweeps = s;
                    p.beta_i = plan.sa_beta_i;
                    p.beta_f = bf;
                    p.mode = m;
                    validate(p);
                    out.emplace_back(p);
                }
    } else if (solver == "sqa") {
        const Schedule sched = plan.sqa_schedule.empty() ? Schedule::linear() : Schedule::load(plan.sqa_schedule);
        for (int s : plan.sqa_sweeps)
            for (auto m : plan.sqa_modes) {
                SqaParams p;
                p.sweeps = s;
                p.trotter_slices = plan.sqa_slices;
                p.beta = plan.sqa_beta;
                p.schedule = sched;
                p.mode = m;
                p.readout = plan.sqa_readout;
                validate(p);
                out.emplace_back(p);
            }
    } else if (solver == "sssv") {
        const Schedule sched = plan.sssv_schedule.empty() ? Schedule::linear() : Schedule::load(plan.sssv_schedule);
        for (int s : plan.sssv_sweeps) {
            SssvParams p;
            p.sweeps = s;
            p.beta = plan.sssv_beta;
            p.schedule = sched;
            validate(p);
            out.emplace_back(p);
        }
    } else {
        throw std::invalid_argument("annealer_grid: unknown annealer '" + solver + "'");
    }
    return out;
}

namespace {

IsingInstance solve_view(const ExperimentPlan& plan, const PlantedInstance& inst, const std::string& id) {
    if (plan.noise <= 0) return to_ising(inst);
    Rng rng(derive_seed(plan.master_seed, {fnv1a("noise"), fnv1a(id)}));
    return inject_noise(inst, plan.noise, rng);
}

void tag_noise(const ExperimentPlan& plan, RunRecord& r) {
    if (plan.noise <= 0) return;
    r.params += ";noise=" + fmt(plan.noise);
    r.params_hash = params_hash(r.params);
}

std::string records_dir(const ExperimentPlan& plan) { return (fs::path(plan.out) / "records").string(); }

std::string records_file(const ExperimentPlan& plan, const std::string& solver) {
    return (fs::path(records_dir(plan)) / (solver + ".jsonl")).string();
}

}  // namespace

CommandStatus cmd_solve(const ExperimentPlan& plan, const std::vector<std::string>& solvers_in, int workers,
                        std::ostream& log) {
    const auto solvers = solvers_in.empty() ? plan.solvers : solvers_in;
    const auto refs = plan_instances(plan);
    fs::create_directories(records_dir(plan));
    CommandStatus st;
    for (const auto& solver : solvers) {
        if (solver != "sa" && solver != "sqa" && solver != "sssv" && solver != "hfs")
            throw std::invalid_argument("solve: unknown solver '" + solver + "'");
        const std::string file = records_file(plan, solver);
        std::set<std::string> done;
        for (const auto& r : read_run_records(file)) done.insert(r.instance_id + "|" + r.params_hash);

        struct Item {
            std::size_t ref;
            std::optional<McParams> mc;
        };
        std::vector<Item> items;
        std::vector<McParams> grid;
        if (solver != "hfs") grid = annealer_grid(plan, solver);
        HfsParams hp;
        hp.stall_limit = plan.hfs_stall;
        hp.sampler = plan.hfs_sampler;
        for (std::size_t i = 0; i < refs.size(); ++i) {
            if (solver == "hfs") {
                RunRecord probe;
                probe.params = canonical(hp);
                tag_noise(plan, probe);
                if (!done.count(refs[i].id + "|" + params_hash(probe.params))) items.push_back({i, std::nullopt});
                else ++st.skipped;
                continue;
            }
            for (const auto& g : grid) {
                RunRecord probe;
                probe.params = std::visit([](const auto& q) { return canonical(q); }, g);
                tag_noise(plan, probe);
                if (!done.count(refs[i].id + "|" + params_hash(probe.params))) items.push_back({i, g});
                else ++st.skipped;
            }
        }

        std::vector<std::optional<RunRecord>> results(items.size());
        std::vector<std::string> trees(items.size());
        std::vector<std::string> errors(items.size());
        parallel_for(items.size(), workers, [&](std::size_t k) {
            const auto& ref = refs[items[k].ref];
            try {
                const auto inst = load_instance(ref.path);
                const auto view = solve_view(plan, inst, ref.id);
                RunRecord rec;
                if (items[k].mc) {
                    const auto& mc = *items[k].mc;
                    const int runs = mc.index() == 0 ? plan.sa_runs : mc.index() == 1 ? plan.sqa_runs : plan.sssv_runs;
                    rec = run_batch(view, ref.id, mc, runs, plan.master_seed, 1);
                } else {
                    auto b = hfs_batch(view, ref.id, hp, plan.hfs_runs, plan.master_seed, 1);
                    tag_noise(plan, b.record);
                    trees[k] = trees_histogram_line(b);
                    rec = b.record;
                    results[k] = rec;
                    return;
                }
                tag_noise(plan, rec);
                results[k] = rec;
            } catch (const std::exception& e) {
                errors[k] = "solve " + ref.id + " " + solver + ": " + e.what();
            }
        });
        std::vector<RunRecord> out;
        std::ofstream tree_log;
        if (solver == "hfs") tree_log.open((fs::path(plan.out) / "hfs_trees.jsonl").string(), std::ios::app);
        for (std::size_t k = 0; k < items.size(); ++k) {
            if (results[k]) {
                out.push_back(*results[k]);
                if (!trees[k].empty()) tree_log << trees[k] << '\n';
                ++st.completed;
            } else {
                ++st.failed;
                log << errors[k] << '\n';
            }
        }
        append_run_records(file, out);
        log << "solve " << solver << ": " << out.size() << " records written\n";
    }
    log << "solve: " << st.completed << " completed, " << st.skipped << " skipped, " << st.failed << " failed\n";
    return st;
}

namespace {

/// Median over a cell where capped counts rank above every exact one; empty
/// when the median lands on a capped entry.
std::optional<double> median_uncapped(std::vector<double> v) {
    const double q = quantile(std::move(v), 0.5);
    if (!std::isfinite(q)) return std::nullopt;
    return q;
}

}  // namespace

CommandStatus cmd_enumerate(const ExperimentPlan& plan, std::int64_t cap, bool oracle, int workers, std::ostream& log) {
    const auto refs = plan_instances(plan);
    const std::string file = (fs::path(plan.out) / "degeneracy.jsonl").string();
    std::map<std::string, DegeneracyRecord> have;
    for (auto& r : read_degeneracy_records(file)) have[r.instance_id] = r;

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < refs.size(); ++i)
        if (!have.count(refs[i].id) || oracle) todo.push_back(i);

    EnumerateOptions opt;
    opt.cap = cap;
    opt.keep_solutions = 0;
    std::vector<std::optional<DegeneracyRecord>> results(todo.size());
    std::vector<std::string> errors(todo.size());
    parallel_for(todo.size(), workers, [&](std::size_t k) {
        const auto& ref = refs[todo[k]];
        try {
            const auto inst = load_instance(ref.path);
            const auto res = enumerate_solutions(inst, opt);
            auto rec = to_record(res, ref.id);
            if (oracle && inst.participating().size() <= 20) {
                const auto bf = brute_force_ground(inst);
                if (bf.min_raw != inst.ground_energy_raw())
                    throw std::logic_error("oracle: planted energy is not the brute-force minimum");
                if (!res.capped && !res.aborted && bf.count != res.raw_count)
                    throw std::logic_error("oracle: brute force counts " + std::to_string(bf.count) +
                                           " minimizers, enumeration " + std::to_string(res.raw_count));
            }
            results[k] = rec;
        } catch (const std::exception& e) {
            errors[k] = "enumerate " + ref.id + ": " + e.what();
        }
    });
    CommandStatus st;
    st.skipped = static_cast<int>(refs.size() - todo.size());
    std::vector<DegeneracyRecord> fresh;
    for (std::size_t k = 0; k < todo.size(); ++k) {
        if (!results[k]) {
            ++st.failed;
            log << errors[k] << '\n';
            continue;
        }
        ++st.completed;
        if (results[k]->aborted) log << "enumerate " << results[k]->instance_id << ": row budget exceeded\n";
        if (!have.count(results[k]->instance_id)) {
            fresh.push_back(*results[k]);
            have[results[k]->instance_id] = *results[k];
        }
    }
    if (!fresh.empty()) {
        std::ofstream out(file, std::ios::app);
        for (const auto& r : fresh) out << to_json_line(r) << '\n';
    }

    // median degeneracy per (L, alpha), capped cells omitted
    std::ostringstream t;
    t << "# records-hash " << hex64(fnv1a(read_file(file))) << '\n';
    t << "L\talpha\tinstances\tmedian_raw\tmedian_log2_reported\n";
    for (int L : plan.L)
        for (const auto& a : plan.alpha) {
            std::vector<double> raw, log2rep;
            for (int i = 0; i < plan.instances; ++i) {
                auto it = have.find(make_instance_id(L, alpha_label(a), i));
                if (it == have.end()) continue;
                const auto& r = it->second;
                const double inf = std::numeric_limits<double>::infinity();
                raw.push_back(r.capped ? inf : static_cast<double>(r.raw_count));
                log2rep.push_back(r.capped ? inf : std::log2(static_cast<double>(r.raw_count)) + r.n_uq);
            }
            if (raw.empty()) continue;
            const auto m = median_uncapped(raw);
            const auto ml = median_uncapped(log2rep);
            if (!m || !ml) continue;
            t << L << '\t' << alpha_label(a) << '\t' << raw.size() << '\t' << fmt(*m) << '\t' << fmt(*ml) << '\n';
        }
    write_file((fs::path(plan.out) / "analysis" / "degeneracy.tsv").string(), t.str());
    log << "enumerate: " << st.completed << " completed, " << st.skipped << " skipped, " << st.failed << " failed\n";
    return st;
}

std::string records_hash(const std::string& dir) {
    std::vector<std::string> lines;
    if (fs::is_directory(dir)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".jsonl") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::ifstream in(f);
            std::string l;
            while (std::getline(in, l))
                if (!l.empty()) lines.push_back(l);
        }
    }
    std::sort(lines.begin(), lines.end());
    std::string all;
    for (const auto& l : lines) all += l + '\n';
    return hex64(fnv1a(all));
}

namespace {

struct Group {
    std::string solver;
    std::string mode;
    std::string params_hash;
    std::int64_t sweeps = 0;
    std::map<std::pair<int, std::string>, std::vector<RunRecord>> cells;  ///< (L, alpha) -> records
};

std::string series_of(const Group& g) { return g.solver + ":" + g.mode; }

double alpha_value(const std::string& label) {
    const auto us = label.find('_');
    if (us != std::string::npos) return std::stod(label.substr(0, us)) / std::stod(label.substr(us + 1));
    return std::stod(label);
}

std::vector<InstanceSuccess> successes(const std::vector<RunRecord>& rs) {
    std::vector<InstanceSuccess> out;
    for (const auto& r : rs) out.push_back({SuccessPosterior(r.successes, r.runs), r.tau_per_run_us});
    return out;
}

struct Optimum {
    TtsPoint point;
    const Group* group = nullptr;
    int sweeps = 0;
    std::string bracketed;  ///< "yes", "no", or "na"
};

}  // namespace

CommandStatus cmd_analyze(const ExperimentPlan& plan, std::ostream& log) {
    const std::string rdir = records_dir(plan);
    const std::string hash = records_hash(rdir);
    std::map<std::pair<std::string, std::string>, Group> groups;  // (solver, params_hash)
    for (const std::string solver : {"sa", "sqa", "sssv", "hfs"}) {
        for (const auto& r : read_run_records(records_file(plan, solver))) {
            auto& g = groups[{r.solver, r.params_hash}];
            if (g.solver.empty()) {
                g.solver = r.solver;
                g.mode = r.mode;
                g.params_hash = r.params_hash;
                g.sweeps = r.sweeps;
            }
            if (g.mode != r.mode)
                throw std::runtime_error("analyze: mixed modes within " + r.solver + " " + r.params_hash);
            auto& cell = g.cells[{r.L, r.alpha}];
            if (r.solver != "hfs" && !cell.empty() && cell.front().tau_per_run_us != r.tau_per_run_us)
                throw std::runtime_error("analyze: mixed tau conventions within " + r.solver + " " + r.params_hash);
            cell.push_back(r);
        }
    }
    CommandStatus st;
    if (groups.empty()) {
        log << "analyze: no records under " << rdir << '\n';
        return st;
    }
    for (auto& [key, g] : groups)
        for (auto& [c, rs] : g.cells)
            std::sort(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.instance_id < b.instance_id; });

    const std::string header = "# records-hash " + hash + "\n";
    auto cell_rng = [&](const std::string& tag, const std::string& who, int L, const std::string& alpha, double q) {
        return Rng(derive_seed(plan.master_seed, {fnv1a(tag), fnv1a(who), static_cast<std::uint64_t>(L), fnv1a(alpha),
                                                  static_cast<std::uint64_t>(std::llround(q * 1e6))}));
    };

    // Per-group TTS table.
    std::map<std::tuple<std::string, std::string, double, int>, std::map<int, std::vector<std::pair<TtsPoint, const Group*>>>>
        by_series;  // (series, alpha, q, L) -> sweeps -> points
    std::ostringstream tts_t;
    tts_t << header << "solver\tmode\tparams_hash\tsweeps\tL\talpha\tq\tinstances\ttts_us\tsigma\tci_low\tci_high\tplug_in\n";
    for (const auto& [key, g] : groups) {
        const TtsRule rule = g.solver == "hfs" ? TtsRule::Renewal : TtsRule::Runs;
        for (const auto& [cell, rs] : g.cells) {
            if (rs.size() < 2) continue;
            const auto inst = successes(rs);
            for (double q : plan.quantiles) {
                Rng rng = cell_rng("tts", g.solver + g.params_hash, cell.first, cell.second, q);
                auto pt = tts_point(inst, cell.first, alpha_value(cell.second), q, rng, plan.resamples, rule);
                tts_t << g.solver << '\t' << g.mode << '\t' << g.params_hash << '\t' << g.sweeps << '\t' << cell.first
                      << '\t' << cell.second << '\t' << q << '\t' << rs.size() << '\t' << fmt(pt.tts) << '\t'
                      << fmt(pt.sigma) << '\t' << fmt(pt.ci_low) << '\t' << fmt(pt.ci_high) << '\t'
                      << fmt(pt.plug_in) << '\n';
                by_series[{series_of(g), cell.second, q, cell.first}][static_cast<int>(g.sweeps)].push_back({pt, &g});
            }
        }
    }
    write_file((fs::path(plan.out) / "analysis" / "tts.tsv").string(), tts_t.str());

    // Optimal-sweeps envelope.
    std::map<std::tuple<std::string, std::string, double>, std::map<int, Optimum>> optimum;  // (series, alpha, q) -> L
    std::ostringstream env_t;
    env_t << header << "series\talpha\tq\tL\tsweeps\tparams_hash\ttts_us\tsigma\tbracketed\n";
    for (const auto& [k, per_sweeps] : by_series) {
        const auto& [series, alpha, q, L] = k;
        std::map<int, std::map<int, TtsPoint>> env_in;
        std::map<int, std::pair<TtsPoint, const Group*>> best_at;
        for (const auto& [sw, pts] : per_sweeps) {
            auto best = std::min_element(pts.begin(), pts.end(),
                                         [](const auto& a, const auto& b) { return a.first.tts < b.first.tts; });
            best_at[sw] = *best;
            env_in[L][sw] = best->first;
        }
        Optimum o;
        if (best_at.size() >= 2) {
            const auto e = optimal_envelope(env_in).front();
            o.sweeps = e.sweeps;
            o.bracketed = e.bracketed ? "yes" : "no";
        } else {
            o.sweeps = best_at.begin()->first;
            o.bracketed = "na";
        }
        o.point = best_at[o.sweeps].first;
        o.group = best_at[o.sweeps].second;
        optimum[{series, alpha, q}][L] = o;
        env_t << series << '\t' << alpha << '\t' << q << '\t' << L << '\t' << o.sweeps << '\t' << o.group->params_hash
              << '\t' << fmt(o.point.tts) << '\t' << fmt(o.point.sigma) << '\t' << o.bracketed << '\n';
    }
    write_file((fs::path(plan.out) / "analysis" / "envelope.tsv").string(), env_t.str());

    // Scaling fits of the envelope, ln TTS = a + b L.
    std::map<std::tuple<std::string, std::string, double>, ScalingFit> fits;
    std::ostringstream fit_t;
    fit_t << header << "series\talpha\tq\tL_min\tpoints\ta\tsigma_a\tb\tsigma_b\n";
    for (const auto& [k, per_L] : optimum) {
        std::vector<FitPoint> pts;
        for (const auto& [L, o] : per_L) {
            FitPoint f{static_cast<double>(L), o.point.tts, std::nullopt};
            if (o.point.sigma > 0 && o.point.tts > 0) f.sigma_log_r = o.point.sigma / o.point.tts;
            pts.push_back(f);
        }
        try {
            const auto f = scaling_fit(pts, plan.fit_L_min);
            fits[k] = f;
            fit_t << std::get<0>(k) << '\t' << std::get<1>(k) << '\t' << std::get<2>(k) << '\t' << f.L_min << '\t'
                  << f.residuals.size() << '\t' << fmt(f.a) << '\t' << fmt(f.sigma_a()) << '\t' << fmt(f.b) << '\t'
                  << fmt(f.sigma_b()) << '\n';
        } catch (const std::invalid_argument&) {
            // fewer than three sizes at or above L_min
        }
    }
    write_file((fs::path(plan.out) / "analysis" / "scaling.tsv").string(), fit_t.str());

    std::set<std::string> series_set;
    for (const auto& [k, v] : optimum) series_set.insert(std::get<0>(k));
    if (series_set.size() >= 2) {
        std::string ref;
        const std::string want = plan.reference.empty() ? plan.solvers.front() : plan.reference;
        for (const auto& s : series_set)
            if (s == want || s.substr(0, s.find(':')) == want) {
                ref = s;
                break;
            }
        if (ref.empty()) ref = *series_set.begin();

        std::ostringstream sp_t, sd_t, dist_t;
        sp_t << header << "series\treference\talpha\tq\tL\tspeedup\tsigma\ttwo_sigma\n";
        sd_t << header << "series\treference\talpha\tq\tb_diff\tsigma\ttwo_sigma\n";
        dist_t << header << "series\treference\talpha\tq\tinstances\tdistance\tboot_mean\ttwo_sigma\n";
        for (const auto& [k, per_L] : optimum) {
            const auto& [series, alpha, q] = k;
            if (series == ref) continue;
            auto rit = optimum.find({ref, alpha, q});
            if (rit == optimum.end()) continue;
            for (const auto& [L, o] : per_L) {
                auto r = rit->second.find(L);
                if (r == rit->second.end()) continue;
                Rng rng = cell_rng("speedup", series + ref, L, alpha, q);
                const auto s = ratio_error({o.point.tts, o.point.sigma}, {r->second.point.tts, r->second.point.sigma},
                                           rng, plan.resamples);
                sp_t << series << '\t' << ref << '\t' << alpha << '\t' << q << '\t' << L << '\t' << fmt(s.mean) << '\t'
                     << fmt(s.sigma) << '\t' << fmt(2 * s.sigma) << '\n';
            }
            auto fx = fits.find(k), fr = fits.find({ref, alpha, q});
            if (fx != fits.end() && fr != fits.end()) {
                Rng rng = cell_rng("slope", series + ref, 0, alpha, q);
                const auto d = slope_difference(fx->second, fr->second, rng, plan.resamples);
                sd_t << series << '\t' << ref << '\t' << alpha << '\t' << q << '\t' << fmt(d.mean) << '\t'
                     << fmt(d.sigma) << '\t' << fmt(2 * d.sigma) << '\n';
            }
            // success-probability vectors over all sizes, instances ordered by id
            std::map<std::string, double> px, pr;
            for (const auto& [L, o] : per_L)
                for (const auto& rec : o.group->cells.at({L, alpha})) px[rec.instance_id] = SuccessPosterior(rec.successes, rec.runs).mean();
            for (const auto& [L, o] : rit->second)
                for (const auto& rec : o.group->cells.at({L, alpha})) pr[rec.instance_id] = SuccessPosterior(rec.successes, rec.runs).mean();
            std::vector<double> a, b;
            for (const auto& [id, p] : px)
                if (auto it = pr.find(id); it != pr.end()) {
                    a.push_back(p);
                    b.push_back(it->second);
                }
            if (a.size() >= 2) {
                Rng rng = cell_rng("distance", series + ref, 0, alpha, q);
                const auto hb = half_distance_bootstrap(a, b, rng, 100, plan.distance);
                dist_t << series << '\t' << ref << '\t' << alpha << '\t' << q << '\t' << a.size() << '\t'
                       << fmt(euclid_distance(a, b, plan.distance)) << '\t' << fmt(hb.mean) << '\t'
                       << fmt(2 * hb.sigma) << '\n';
            }
        }
        write_file((fs::path(plan.out) / "analysis" / "speedup.tsv").string(), sp_t.str());
        write_file((fs::path(plan.out) / "analysis" / "slope_diff.tsv").string(), sd_t.str());
        write_file((fs::path(plan.out) / "analysis" / "distance.tsv").string(), dist_t.str());
    }

    // Degeneracy versus hardness, per series and cell.
    const std::string deg_file = (fs::path(plan.out) / "degeneracy.jsonl").string();
    if (fs::exists(deg_file)) {
        std::map<std::string, DegeneracyRecord> deg;
        for (auto& r : read_degeneracy_records(deg_file)) deg[r.instance_id] = r;
        std::ostringstream c_t;
        c_t << header << "# degeneracy-hash " << hex64(fnv1a(read_file(deg_file))) << '\n';
        c_t << "series\tL\talpha\tinstances\tpearson_log2deg_lntts\n";
        const double q0 = plan.quantiles.front();
        for (const auto& [k, per_L] : optimum) {
            if (std::get<2>(k) != q0) continue;
            for (const auto& [L, o] : per_L) {
                std::vector<double> xs, ys;
                const TtsRule rule = o.group->solver == "hfs" ? TtsRule::Renewal : TtsRule::Runs;
                for (const auto& rec : o.group->cells.at({L, std::get<1>(k)})) {
                    auto it = deg.find(rec.instance_id);
                    if (it == deg.end() || it->second.capped) continue;
                    xs.push_back(std::log2(static_cast<double>(it->second.raw_count)) + it->second.n_uq);
                    ys.push_back(std::log(instance_tts(SuccessPosterior(rec.successes, rec.runs).mean(),
                                                       rec.tau_per_run_us, rule, plan.pd)));
                }
                if (xs.size() < 3) continue;
                try {
                    const double r = pearson(xs, ys);
                    c_t << std::get<0>(k) << '\t' << L << '\t' << std::get<1>(k) << '\t' << xs.size() << '\t'
                        << fmt(r) << '\n';
                } catch (const std::invalid_argument&) {
                    // constant degeneracy or hardness in this cell
                }
            }
        }
        write_file((fs::path(plan.out) / "analysis" / "correlation.tsv").string(), c_t.str());
    }
    st.completed = static_cast<int>(groups.size());
    log << "analyze: " << groups.size() << " parameter groups, records-hash " << hash << '\n';
    return st;
}

}  // namespace frustbench
