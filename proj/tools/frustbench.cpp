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

// frustbench generate|solve|enumerate|analyze --plan <file>

#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frustbench/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Planted-solution Ising benchmark driver"};
    app.require_subcommand(1, 1);

    std::string plan_path;
    std::string solvers;
    bool oracle = false;
    long long cap = -1;
    int workers = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--plan", plan_path, "Experiment plan file")->required()->check(CLI::ExistingFile);
        sub->add_option("--workers", workers, "Worker threads (default: FRUSTBENCH_WORKERS or all cores)");
    };
    auto* gen = app.add_subcommand("generate", "Write the plan's instance files");
    add_common(gen);
    auto* solve = app.add_subcommand("solve", "Run solver batches and append run records");
    add_common(solve);
    solve->add_option("--solvers", solvers, "Comma-separated subset of sa,sqa,sssv,hfs");
    auto* enumerate = app.add_subcommand("enumerate", "Count ground states by bucket elimination");
    add_common(enumerate);
    enumerate->add_flag("--oracle", oracle, "Cross-check instances with <= 20 active spins by brute force");
    enumerate->add_option("--cap", cap, "Stop counting after this many solutions");
    auto* analyze = app.add_subcommand("analyze", "Write TTS, envelope, scaling and comparison tables");
    add_common(analyze);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto plan = frustbench::load_plan(plan_path);
        const int w = workers > 0 ? workers : frustbench::default_workers();
        frustbench::CommandStatus st;
        if (gen->parsed()) {
            st = frustbench::cmd_generate(plan, w, std::cerr);
        } else if (solve->parsed()) {
            std::vector<std::string> roster;
            std::stringstream ss(solvers);
            for (std::string s; std::getline(ss, s, ',');)
                if (!s.empty()) roster.push_back(s);
            st = frustbench::cmd_solve(plan, roster, w, std::cerr);
        } else if (enumerate->parsed()) {
            st = frustbench::cmd_enumerate(plan, cap > 0 ? cap : plan.enumerate_cap, oracle, w, std::cerr);
        } else {
            st = frustbench::cmd_analyze(plan, std::cerr);
        }
        return st.ok() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "frustbench: " << e.what() << '\n';
        return 2;
    }
}
