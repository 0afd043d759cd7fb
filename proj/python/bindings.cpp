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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "frustbench/analytics.hpp"
#include "frustbench/annealers.hpp"
#include "frustbench/chimera.hpp"
#include "frustbench/enumerator.hpp"
#include "frustbench/hfs.hpp"
#include "frustbench/instance.hpp"
#include "frustbench/pipeline.hpp"

namespace py = pybind11;
namespace fb = frustbench;

namespace {

fb::Rational to_rational(const py::object& o) {
    if (py::isinstance<py::str>(o)) return fb::Rational::parse(o.cast<std::string>());
    if (py::isinstance<py::int_>(o)) return fb::Rational(o.cast<std::int64_t>());
    return fb::Rational::parse(py::str(o).cast<std::string>());
}

fb::AnnealMode to_mode(const std::string& m) {
    if (m == "solver" || m == "sas" || m == "sqas") return fb::AnnealMode::Solver;
    if (m == "annealer" || m == "saa" || m == "sqaa") return fb::AnnealMode::Annealer;
    throw py::value_error("mode must be 'solver' or 'annealer'");
}

py::dict record_dict(const fb::RunRecord& r) {
    py::dict d;
    d["instance_id"] = r.instance_id;
    d["solver"] = r.solver;
    d["params_hash"] = r.params_hash;
    d["runs"] = r.runs;
    d["successes"] = r.successes;
    d["tau_per_run_us"] = r.tau_per_run_us;
    d["mode"] = r.mode;
    return d;
}

}  // namespace

PYBIND11_MODULE(_frustbench, m) {
    m.doc() = "Planted-solution Ising instances on Chimera graphs, solvers, and benchmark statistics.";

    py::class_<fb::ChimeraGraph>(m, "ChimeraGraph")
        .def_property_readonly("L", &fb::ChimeraGraph::L)
        .def_property_readonly("vertex_count", &fb::ChimeraGraph::vertex_count)
        .def_property_readonly("edge_count", &fb::ChimeraGraph::edge_count)
        .def_property_readonly("vertices", &fb::ChimeraGraph::vertices)
        .def_property_readonly("edges", &fb::ChimeraGraph::edges)
        .def_property_readonly("broken", &fb::ChimeraGraph::broken)
        .def_property_readonly("partition_a", &fb::ChimeraGraph::partition_a)
        .def_property_readonly("partition_b", &fb::ChimeraGraph::partition_b)
        .def("neighbors",
             [](const fb::ChimeraGraph& g, int v) {
                 auto n = g.neighbors(v);
                 return std::vector<int>(n.begin(), n.end());
             })
        .def("subgraph", &fb::ChimeraGraph::subgraph, py::arg("L_sub"))
        .def("serialize", &fb::ChimeraGraph::serialize)
        .def_static("parse", [](const std::string& s) { return fb::ChimeraGraph::parse(s); });

    m.def(
        "build_chimera", [](int L, const std::vector<int>& broken) { return fb::build_chimera(L, broken); },
        py::arg("L"), py::arg("broken") = std::vector<int>{});

    py::class_<fb::PlantedInstance>(m, "PlantedInstance")
        .def_property_readonly("graph", [](const fb::PlantedInstance& i) { return i.graph; })
        .def_property_readonly("clause_count", &fb::PlantedInstance::clause_count)
        .def_property_readonly("scale_factor", [](const fb::PlantedInstance& i) { return i.scale_factor; })
        .def_property_readonly("raw_couplings", [](const fb::PlantedInstance& i) { return i.raw_couplings; })
        .def_property_readonly("planted",
                               [](const fb::PlantedInstance& i) { return std::vector<int>(i.planted.begin(), i.planted.end()); })
        .def_property_readonly("alpha", [](const fb::PlantedInstance& i) { return i.alpha.str(); })
        .def_property_readonly("ground_energy_raw", &fb::PlantedInstance::ground_energy_raw)
        .def_property_readonly("ground_energy", [](const fb::PlantedInstance& i) { return i.ground_energy().to_double(); })
        .def_property_readonly("participating", &fb::PlantedInstance::participating)
        .def_property_readonly("clause_lengths",
                               [](const fb::PlantedInstance& i) {
                                   std::vector<int> out;
                                   for (const auto& c : i.clauses) out.push_back(c.length());
                                   return out;
                               })
        .def("to_text", [](const fb::PlantedInstance& i) { return fb::write_instance(i); })
        .def_static("from_text", [](const std::string& s) { return fb::parse_instance(s); })
        .def("raw_energy",
             [](const fb::PlantedInstance& i, const std::vector<int>& spins) {
                 return fb::raw_energy(i, fb::SpinConfig(spins.begin(), spins.end()));
             })
        .def("energy",
             [](const fb::PlantedInstance& i, const std::vector<int>& spins) {
                 return fb::energy(i, fb::SpinConfig(spins.begin(), spins.end())).to_double();
             })
        .def("frustration_fraction", [](const fb::PlantedInstance& i) { return fb::frustration_fraction(i).to_double(); });

    m.def(
        "generate_instance",
        [](const fb::ChimeraGraph& g, const py::object& alpha, std::uint64_t seed, int min_len) {
            return fb::assemble_instance(g, to_rational(alpha), seed, min_len);
        },
        py::arg("graph"), py::arg("alpha"), py::arg("seed"), py::arg("min_len") = 8);
    m.def("load_instance", &fb::load_instance, py::arg("path"));

    m.def(
        "sa_batch",
        [](const fb::PlantedInstance& inst, int sweeps, int runs, std::uint64_t seed, double beta_i, double beta_f,
           const std::string& mode) {
            fb::SaParams p;
            p.sweeps = sweeps;
            p.beta_i = beta_i;
            p.beta_f = beta_f;
            p.mode = to_mode(mode);
            return record_dict(fb::run_batch(fb::to_ising(inst), "py", p, runs, seed));
        },
        py::arg("instance"), py::arg("sweeps") = 1000, py::arg("runs") = 100, py::arg("seed") = 1,
        py::arg("beta_i") = 0.01, py::arg("beta_f") = 5.0, py::arg("mode") = "solver");
    m.def(
        "sqa_batch",
        [](const fb::PlantedInstance& inst, int sweeps, int slices, double beta, int runs, std::uint64_t seed,
           const std::string& mode) {
            fb::SqaParams p;
            p.sweeps = sweeps;
            p.trotter_slices = slices;
            p.beta = beta;
            p.mode = to_mode(mode);
            return record_dict(fb::run_batch(fb::to_ising(inst), "py", p, runs, seed));
        },
        py::arg("instance"), py::arg("sweeps") = 1000, py::arg("slices") = 64, py::arg("beta") = 10.0,
        py::arg("runs") = 100, py::arg("seed") = 1, py::arg("mode") = "annealer");
    m.def(
        "sssv_batch",
        [](const fb::PlantedInstance& inst, int sweeps, double beta, int runs, std::uint64_t seed) {
            fb::SssvParams p;
            p.sweeps = sweeps;
            p.beta = beta;
            return record_dict(fb::run_batch(fb::to_ising(inst), "py", p, runs, seed));
        },
        py::arg("instance"), py::arg("sweeps") = 10000, py::arg("beta") = 20.0, py::arg("runs") = 100,
        py::arg("seed") = 1);
    m.def(
        "hfs_solve",
        [](const fb::PlantedInstance& inst, int stall_limit, std::uint64_t seed) {
            fb::HfsParams p;
            p.stall_limit = stall_limit;
            fb::Rng rng(seed);
            const auto o = fb::hfs_solve(fb::to_ising(inst), p, rng);
            py::dict d;
            d["best_energy"] = o.best_energy;
            d["success"] = o.success;
            d["trees_used"] = o.trees_used;
            d["wall_model_time_us"] = o.wall_model_time_us;
            return d;
        },
        py::arg("instance"), py::arg("stall_limit") = 16, py::arg("seed") = 1);

    m.def(
        "enumerate_solutions",
        [](const fb::PlantedInstance& inst, std::int64_t cap) {
            fb::EnumerateOptions opt;
            opt.cap = cap;
            opt.keep_solutions = 0;
            const auto r = fb::enumerate_solutions(inst, opt);
            py::dict d;
            d["raw_count"] = r.raw_count;
            d["capped"] = r.capped;
            d["aborted"] = r.aborted;
            d["n_uq"] = r.n_uq;
            d["reported_degeneracy"] = py::int_(py::str(r.reported_degeneracy.empty() ? "0" : r.reported_degeneracy));
            return d;
        },
        py::arg("instance"), py::arg("cap") = 100000);
    m.def("brute_force_count", [](const fb::PlantedInstance& inst) {
        const auto b = fb::brute_force_ground(inst);
        return py::make_tuple(b.min_raw, b.count);
    });

    m.def("runs_to_solution", &fb::runs_to_solution, py::arg("p"), py::arg("pd") = 0.99);
    m.def("posterior_mean", [](std::int64_t x, std::int64_t r) { return fb::SuccessPosterior(x, r).mean(); });
    m.def("quantile", &fb::quantile, py::arg("values"), py::arg("q"));
    m.def(
        "euclid_distance",
        [](const std::vector<double>& a, const std::vector<double>& b, const std::string& convention) {
            return fb::euclid_distance(a, b,
                                       convention == "literal" ? fb::DistanceConvention::Literal : fb::DistanceConvention::Rms);
        },
        py::arg("p1"), py::arg("p2"), py::arg("convention") = "rms");
    m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) { return fb::pearson(x, y); });
    m.def(
        "scaling_fit",
        [](const std::vector<double>& L, const std::vector<double>& r, int L_min) {
            if (L.size() != r.size()) throw py::value_error("L and r differ in length");
            std::vector<fb::FitPoint> pts;
            for (std::size_t i = 0; i < L.size(); ++i) pts.push_back({L[i], r[i], std::nullopt});
            const auto f = fb::scaling_fit(pts, L_min);
            return py::make_tuple(f.a, f.b, f.sigma_a(), f.sigma_b());
        },
        py::arg("L"), py::arg("r"), py::arg("L_min") = 4);

    m.def(
        "run_command",
        [](const std::string& command, const std::string& plan_path, int workers) {
            const auto plan = fb::load_plan(plan_path);
            std::ostringstream log;
            fb::CommandStatus st;
            if (command == "generate") st = fb::cmd_generate(plan, workers, log);
            else if (command == "solve") st = fb::cmd_solve(plan, {}, workers, log);
            else if (command == "enumerate") st = fb::cmd_enumerate(plan, plan.enumerate_cap, false, workers, log);
            else if (command == "analyze") st = fb::cmd_analyze(plan, log);
            else throw py::value_error("unknown command " + command);
            return py::make_tuple(st.ok(), log.str());
        },
        py::arg("command"), py::arg("plan"), py::arg("workers") = 1);
}
