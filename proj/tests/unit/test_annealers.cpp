#include <cmath>
#include <numeric>

#include "doctest.h"
#include "frustbench/annealers.hpp"
#include "toy.hpp"

using namespace frustbench;

namespace {

PlantedInstance easy_instance(std::uint64_t seed = 8) {
    return assemble_instance(build_chimera(2), Rational(1, 10), seed);
}

}  // namespace

TEST_CASE("metropolis acceptance matches exp(-beta dE)") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) CHECK(metropolis_accept(-0.5, 3.0, rng));
    CHECK(metropolis_accept(0.0, 3.0, rng));
    int acc = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) acc += metropolis_accept(1.0, 0.7, rng);
    const double p = std::exp(-0.7);
    CHECK(std::abs(acc / double(n) - p) < 4 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("imaginary-time coupling and cluster probability") {
    CHECK(transverse_coupling(1.0) == doctest::Approx(-0.5 * std::log(std::tanh(1.0))).epsilon(1e-12));
    CHECK(cluster_add_probability(1.0) == doctest::Approx(1.0 - std::tanh(1.0)).epsilon(1e-12));
    CHECK(cluster_add_probability(1.0) == doctest::Approx(1.0 - std::exp(-2 * transverse_coupling(1.0))));
    CHECK(cluster_add_probability(0.0) == 1.0);
    CHECK_THROWS(transverse_coupling(0.0));
}

TEST_CASE("time clusters respect alignment and wrap the column") {
    Rng rng(2);
    std::vector<std::int8_t> up(16, 1);
    auto full = grow_time_cluster(up, 5, 1.0, rng);
    CHECK(full.length == 16);
    auto lone = grow_time_cluster(up, 5, 0.0, rng);
    CHECK(lone.length == 1);
    CHECK(lone.attempts == 2);
    std::vector<std::int8_t> mixed(8, 1);
    mixed[2] = -1;
    mixed[6] = -1;
    auto c = grow_time_cluster(mixed, 4, 1.0, rng);
    CHECK(c.start == 3);
    CHECK(c.length == 3);
    auto w = grow_time_cluster(mixed, 0, 1.0, rng);  // slices 7, 0, 1 across the boundary
    CHECK(w.start == 7);
    CHECK(w.length == 3);
}

TEST_CASE("fixed-beta Metropolis samples a two-spin Boltzmann distribution") {
    // E = s0 s1, ground pair anti-aligned
    auto t = toy::ising(2, {{0, 1}}, {1}, -1);
    Rng rng(11);
    SpinConfig s{1, 1};
    const double beta = 0.8;
    const int n = 200000;
    int anti = 0;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 5; ++k) metropolis_sweep(t, s, beta, rng, [](double, int) {});
        anti += s[0] != s[1];
    }
    const double p = std::exp(beta) / (std::exp(beta) + std::exp(-beta));
    CHECK(std::abs(anti / double(n) - p) < 4 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("SA finds easy ground states and SAS dominates SAA on shared seeds") {
    const auto inst = easy_instance();
    const auto ising = to_ising(inst);
    SaParams sas;
    sas.sweeps = 200;
    SaParams saa = sas;
    saa.mode = AnnealMode::Annealer;
    const auto rs = run_batch(ising, "L2/a0.1/0", sas, 64, 9);
    const auto ra = run_batch(ising, "L2/a0.1/0", saa, 64, 9);
    CHECK(rs.successes >= ra.successes);
    CHECK(rs.successes > 50);
    CHECK(rs.tau_per_run_us == doctest::Approx(200 * kTauSaUs));
    CHECK(rs.params_hash != ra.params_hash);
    Rng r1(3);
    const auto o = sa_run(ising, sas, r1);
    CHECK(o.best_energy <= o.final_energy);
    CHECK(o.wall_model_time_us == doctest::Approx(708.0));
}

TEST_CASE("run batches do not depend on worker count") {
    const auto ising = to_ising(easy_instance(4));
    SaParams p;
    p.sweeps = 50;
    p.beta_f = 2.0;
    const auto a = run_batch(ising, "x", p, 40, 17, 1);
    const auto b = run_batch(ising, "x", p, 40, 17, 3);
    CHECK(a == b);
}

TEST_CASE("SQA anneals an easy instance") {
    const auto ising = to_ising(easy_instance());
    SqaParams p;
    p.sweeps = 300;
    p.trotter_slices = 16;
    const auto rec = run_batch(ising, "L2/a0.1/0", p, 20, 5);
    CHECK(rec.successes >= 10);
    CHECK(rec.mode == "sqaa");
    CHECK(rec.tau_per_run_us == doctest::Approx(300 * kTauSqaUs));
    SqaParams bad = p;
    bad.trotter_slices = 1;
    CHECK_THROWS(validate(bad));
}

TEST_CASE("SSSV rotor energy, projection and an easy anneal") {
    const auto inst = easy_instance();
    const auto ising = to_ising(inst);
    std::vector<double> theta(ising.n, 0.0);
    CHECK(rotor_energy(ising, theta, 0.3, 2.0) ==
          doctest::Approx(2.0 * ising.dynamics_energy(project_rotors(ising, theta))));
    std::vector<double> half(ising.n, std::acos(0.0));
    CHECK(rotor_energy(ising, half, 1.0, 1.0) == doctest::Approx(-static_cast<double>(ising.active.size())));
    std::vector<double> down(ising.n, 3.0);
    for (int v : ising.active) CHECK(project_rotors(ising, down)[v] == -1);

    SssvParams p;
    p.sweeps = 2000;
    const auto rec = run_batch(ising, "L2/a0.1/0", p, 20, 5);
    CHECK(rec.successes >= 5);
    CHECK(rec.tau_per_run_us == doctest::Approx(2000 * kTauSssvUs));
}
