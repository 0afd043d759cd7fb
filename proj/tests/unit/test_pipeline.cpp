#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "frustbench/pipeline.hpp"

using namespace frustbench;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("frustbench_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("plan parsing") {
    const auto p = parse_plan("L = 2..4\nalpha = 0.1..0.3/0.1  # three densities\nsolvers = sa, hfs\n"
                              "sa.sweeps = 10, 100\nsa.mode = solver, annealer\nanalyze.quantiles = 0.5, 0.9\n",
                              "/tmp");
    CHECK(p.L == std::vector<int>{2, 3, 4});
    CHECK(p.alpha == std::vector<Rational>{Rational(1, 10), Rational(2, 10), Rational(3, 10)});
    CHECK(p.solvers == std::vector<std::string>{"sa", "hfs"});
    CHECK(p.sa_modes.size() == 2);
    CHECK(annealer_grid(p, "sa").size() == 4);
    CHECK_THROWS(parse_plan("bogus = 1\n"));
    CHECK_THROWS(parse_plan("L = 2\nL = 3\n"));
    CHECK(alpha_label(Rational(1, 10)) == "0.1");
    CHECK(alpha_label(Rational(1, 3)) == "1_3");
    CHECK(alpha_label(Rational(1)) == "1");
}

TEST_CASE("generation is deterministic and resumable") {
    const auto dir = scratch("gen");
    auto plan = parse_plan("L = 2, 3\nalpha = 0.1, 0.2\ninstances = 10\nmaster_seed = 7\nout = " +
                           (dir / "a").string() + "\n");
    std::ostringstream log;
    CHECK(cmd_generate(plan, 1, log).completed == 40);
    const auto refs = plan_instances(plan);
    REQUIRE(refs.size() == 40);
    auto plan_b = plan;
    plan_b.out = (dir / "b").string();
    CHECK(cmd_generate(plan_b, 2, log).ok());
    for (const auto& r : plan_instances(plan_b)) {
        const auto other = fs::path(plan.out) / fs::relative(r.path, plan_b.out);
        CHECK(slurp(r.path) == slurp(other));
    }
    CHECK(cmd_generate(plan, 1, log).skipped == 40);
}

TEST_CASE("solve resumes and analyze guards against mixed groups") {
    const auto dir = scratch("solve");
    auto plan = parse_plan("L = 2\nalpha = 0.1\ninstances = 3\nsolvers = sa\nsa.sweeps = 50\nsa.runs = 20\n"
                           "analyze.fit_L_min = 2\nanalyze.resamples = 100\nout = " +
                           (dir / "run").string() + "\n");
    std::ostringstream log;
    REQUIRE(cmd_generate(plan, 1, log).ok());
    REQUIRE(cmd_solve(plan, {}, 1, log).ok());
    const auto rec = fs::path(plan.out) / "records" / "sa.jsonl";
    const auto before = slurp(rec);
    CHECK(cmd_solve(plan, {}, 1, log).skipped == 3);
    CHECK(slurp(rec) == before);

    CHECK(cmd_analyze(plan, log).ok());
    CHECK(fs::exists(fs::path(plan.out) / "analysis" / "tts.tsv"));
    CHECK(!fs::exists(fs::path(plan.out) / "analysis" / "speedup.tsv"));
    CHECK(slurp(fs::path(plan.out) / "analysis" / "tts.tsv").rfind("# records-hash", 0) == 0);

    // a foreign record with a different tau in the same group
    auto recs = read_run_records(rec.string());
    recs[0].tau_per_run_us *= 2;
    recs[0].instance_id = make_instance_id(2, "0.1", 99);
    append_run_records(rec.string(), {recs[0]});
    CHECK_THROWS(cmd_analyze(plan, log));
}
