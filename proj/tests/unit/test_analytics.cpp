#include <cmath>

#include "doctest.h"
#include "frustbench/analytics.hpp"

using namespace frustbench;

TEST_CASE("runs to solution and time to solution") {
    CHECK(runs_to_solution(0.5) == doctest::Approx(6.64386).epsilon(1e-6));
    CHECK(runs_to_solution(0.1) == doctest::Approx(std::log(0.01) / std::log(0.9)).epsilon(1e-12));
    CHECK(runs_to_solution(0.9) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tts(runs_to_solution(0.5), 20.0) == doctest::Approx(132.877).epsilon(1e-5));
    CHECK(runs_to_solution(0.99) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isfinite(runs_to_solution(1e-12)));
    double prev = runs_to_solution(0.001);
    for (double p = 0.01; p < 1.0; p += 0.01) {
        const double r = runs_to_solution(p);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(speedup_ratio(50.0, 100.0) == doctest::Approx(0.5));
    CHECK(instance_tts(0.25, 4.0, TtsRule::Renewal) == doctest::Approx(16.0));
}

TEST_CASE("Jeffreys posterior") {
    const SuccessPosterior zero(0, 10000);
    CHECK(zero.mean() == doctest::Approx(0.5 / 10001).epsilon(1e-12));
    CHECK_THROWS(SuccessPosterior(5, 4));
    Rng rng(1);
    const SuccessPosterior half(50, 100);
    double sum = 0;
    for (int i = 0; i < 20000; ++i) {
        const double p = half.sample(rng);
        CHECK((p > 0 && p < 1));
        sum += p;
    }
    CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("quantile conventions") {
    CHECK(quantile({3, 1, 2}, 0.5) == 2);
    CHECK(quantile({5, 1, 4, 2, 3}, 0.25) == 2);  // ceil(1.25) = 2nd
    CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile({1, 2, 3, 4}, 1.0) == 4);
    CHECK(quantile({7}, 0.9) == 7);
    CHECK_THROWS(quantile({}, 0.5));
    CHECK_THROWS(quantile({1, 2}, 1.5));
}

TEST_CASE("bootstrap spread shrinks with instance count") {
    Rng rng(2);
    auto spread = [&](int n) {
        std::vector<InstanceSuccess> xs;
        for (int i = 0; i < n; ++i) xs.push_back({SuccessPosterior(10 + i % 80, 100), 1.0});
        return bootstrap_statistic(xs, 0.5, rng, 1000).sigma;
    };
    const double s25 = spread(25), s400 = spread(400);
    CHECK(s400 < s25);
    CHECK(s25 / s400 == doctest::Approx(4.0).epsilon(0.5));

    std::vector<InstanceSuccess> same(50, {SuccessPosterior(50, 100), 2.0});
    const auto pt = tts_point(same, 3, 0.2, 0.5, rng, 500);
    CHECK(pt.ci_low == doctest::Approx(pt.tts - 2 * pt.sigma));
    CHECK(pt.plug_in == doctest::Approx(2.0 * runs_to_solution(SuccessPosterior(50, 100).mean())));
    CHECK(std::abs(pt.tts - pt.plug_in) < 0.2 * pt.plug_in);
}

TEST_CASE("ratio errors by sampling") {
    Rng rng(3);
    const auto r = ratio_error({100, 5}, {100, 5}, rng, 20000);
    CHECK(r.mean == doctest::Approx(1.0).epsilon(0.01));
    CHECK(r.sigma == doctest::Approx(0.0707).epsilon(0.1));
}

TEST_CASE("scaling fit recovers exact exponentials") {
    std::vector<FitPoint> pts;
    for (int L = 2; L <= 8; ++L) pts.push_back({double(L), std::exp(1.0 + 0.5 * L), std::nullopt});
    const auto f = scaling_fit(pts, 4);
    CHECK(std::abs(f.a - 1.0) < 1e-10);
    CHECK(std::abs(f.b - 0.5) < 1e-10);
    CHECK(f.residuals.size() == 5);
    CHECK(!f.weighted);
    for (auto& p : pts) p.sigma_log_r = 0.1;
    const auto w = scaling_fit(pts, 4);
    CHECK(w.weighted);
    CHECK(std::abs(w.b - 0.5) < 1e-10);
    CHECK(w.sigma_b() > 0);
    std::vector<FitPoint> two{{4, 1, {}}, {5, 2, {}}};
    CHECK_THROWS(scaling_fit(two, 4));

    Rng rng(4);
    const auto d = slope_difference(w, w, rng, 5000);
    CHECK(std::abs(d.mean) < 3 * w.sigma_b());
    CHECK(d.sigma == doctest::Approx(std::sqrt(2.0) * w.sigma_b()).epsilon(0.1));
}

TEST_CASE("distances and correlation") {
    const std::vector<double> a{1, 0}, b{0, 1};
    CHECK(euclid_distance(a, b) == doctest::Approx(1.0));
    CHECK(euclid_distance(a, b, DistanceConvention::Literal) == doctest::Approx(std::sqrt(0.5)));
    CHECK(euclid_distance(a, a) == 0);

    // M = 700 with constant offset 0.408 per entry
    std::vector<double> p1(700), p2(700);
    for (int i = 0; i < 700; ++i) {
        p1[i] = 0.5 + 0.0005 * i;
        p2[i] = p1[i] - 0.408;
    }
    CHECK(euclid_distance(p1, p2) == doctest::Approx(0.408));
    Rng rng(5);
    const auto h = half_distance_bootstrap(p1, p2, rng, 100);
    CHECK(h.mean == doctest::Approx(0.408));

    const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8}, z{8, 6, 4, 2};
    CHECK(pearson(x, y) == doctest::Approx(1.0));
    CHECK(pearson(x, z) == doctest::Approx(-1.0));
}

TEST_CASE("optimal envelope") {
    auto pt = [](double t) {
        TtsPoint p;
        p.tts = t;
        return p;
    };
    std::map<int, std::map<int, TtsPoint>> m;
    m[4] = {{10, pt(50)}, {100, pt(20)}, {1000, pt(80)}};
    m[6] = {{10, pt(90)}, {100, pt(70)}, {1000, pt(60)}};
    const auto env = optimal_envelope(m);
    REQUIRE(env.size() == 2);
    CHECK(env[0].sweeps == 100);
    CHECK(env[0].bracketed);
    CHECK(env[1].sweeps == 1000);
    CHECK(!env[1].bracketed);
    m[8] = {{10, pt(1)}};
    CHECK_THROWS(optimal_envelope(m));
}
