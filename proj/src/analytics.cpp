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

#include "frustbench/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace frustbench {

SuccessPosterior::SuccessPosterior(std::int64_t successes, std::int64_t runs) : x(successes), r(runs) {
    if (runs < 1 || successes < 0 || successes > runs)
        throw std::invalid_argument("success posterior: need 0 <= successes <= runs, runs >= 1");
}

double SuccessPosterior::sample(Rng& rng) const {
    std::gamma_distribution<double> ga(alpha(), 1.0), gb(beta(), 1.0);
    const double u = ga(rng.engine());
    const double v = gb(rng.engine());
    if (u + v == 0) return mean();
    return u / (u + v);
}

double runs_to_solution(double p, double pd) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("runs_to_solution: p must lie in (0, 1)");
    if (!(pd > 0 && pd < 1)) throw std::invalid_argument("runs_to_solution: p_d must lie in (0, 1)");
    return std::log1p(-pd) / std::log1p(-p);
}

double tts(double runs, double tau_us) { return runs * tau_us; }

double speedup_ratio(double tts_x, double tts_ref) {
    if (!(tts_x > 0 && tts_ref > 0)) throw std::invalid_argument("speedup_ratio: times must be positive");
    return tts_x / tts_ref;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile: empty input");
    if (!(q >= 0 && q <= 1)) throw std::invalid_argument("quantile: q outside [0, 1]");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
        return values[std::clamp<std::size_t>(rank, 1, n) - 1];
    }
    const double h = q * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

MeanSigma mean_sigma(std::span<const double> xs) {
    if (xs.empty()) return {};
    const double n = static_cast<double>(xs.size());
    const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0;
    for (double x : xs) ss += (x - m) * (x - m);
    return {m, xs.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0};
}

double instance_tts(double p, double tau_us, TtsRule rule, double pd) {
    // posterior draws can round to 0 or 1
    p = std::clamp(p, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
    return rule == TtsRule::Runs ? runs_to_solution(p, pd) * tau_us : tau_us / p;
}

namespace {

template <class F>
MeanSigma bootstrap(std::span<const InstanceSuccess> inst, double q, Rng& rng, int resamples, F&& value) {
    if (inst.size() < 2) throw std::invalid_argument("bootstrap: need at least 2 instances");
    if (resamples < 100) throw std::invalid_argument("bootstrap: need at least 100 resamples");
    std::vector<double> stats(resamples), draw(inst.size());
    for (int j = 0; j < resamples; ++j) {
        for (auto& d : draw) {
            const auto& pick = inst[rng.below(inst.size())];
            d = value(pick, pick.posterior.sample(rng));
        }
        stats[j] = quantile(draw, q);
    }
    return mean_sigma(stats);
}

}  // namespace

MeanSigma bootstrap_statistic(std::span<const InstanceSuccess> instances, double q, Rng& rng, int resamples,
                              TtsRule rule, double pd) {
    return bootstrap(instances, q, rng, resamples,
                     [&](const InstanceSuccess& s, double p) { return instance_tts(p, s.tau_us, rule, pd); });
}

MeanSigma bootstrap_runs(std::span<const InstanceSuccess> instances, double q, Rng& rng, int resamples, double pd) {
    return bootstrap(instances, q, rng, resamples,
                     [&](const InstanceSuccess&, double p) { return instance_tts(p, 1.0, TtsRule::Runs, pd); });
}

TtsPoint tts_point(std::span<const InstanceSuccess> instances, int L, double alpha, double q, Rng& rng, int resamples,
                   TtsRule rule) {
    TtsPoint t;
    t.L = L;
    t.alpha = alpha;
    t.q = q;
    const auto ms = bootstrap_statistic(instances, q, rng, resamples, rule);
    t.tts = ms.mean;
    t.sigma = ms.sigma;
    t.ci_low = ms.mean - 2 * ms.sigma;
    t.ci_high = ms.mean + 2 * ms.sigma;
    std::vector<double> plug;
    for (const auto& s : instances) plug.push_back(instance_tts(s.posterior.mean(), s.tau_us, rule));
    t.plug_in = quantile(plug, q);
    return t;
}

MeanSigma ratio_error(MeanSigma a, MeanSigma b, Rng& rng, int samples) {
    if (!(a.mean > 0 && b.mean > 0)) throw std::invalid_argument("ratio_error: means must be positive");
    if (samples < 2) throw std::invalid_argument("ratio_error: need at least 2 samples");
    std::normal_distribution<double> na(a.mean, a.sigma > 0 ? a.sigma : 1.0);
    std::normal_distribution<double> nb(b.mean, b.sigma > 0 ? b.sigma : 1.0);
    std::vector<double> s(samples);
    for (auto& v : s) {
        const double x = a.sigma > 0 ? na(rng.engine()) : a.mean;
        const double y = b.sigma > 0 ? nb(rng.engine()) : b.mean;
        v = x / y;
    }
    return mean_sigma(s);
}

double ScalingFit::sigma_a() const { return std::sqrt(std::max(0.0, covariance[0][0])); }
double ScalingFit::sigma_b() const { return std::sqrt(std::max(0.0, covariance[1][1])); }

ScalingFit scaling_fit(std::span<const FitPoint> points, int L_min) {
    std::vector<FitPoint> used;
    std::set<double> distinct;
    for (const auto& p : points)
        if (p.L >= L_min) {
            if (!(p.r > 0)) throw std::invalid_argument("scaling_fit: r must be positive");
            used.push_back(p);
            distinct.insert(p.L);
        }
    if (distinct.size() < 3) throw std::invalid_argument("scaling_fit: need at least 3 distinct L >= L_min");
    const bool weighted =
        std::all_of(used.begin(), used.end(), [](const FitPoint& p) { return p.sigma_log_r && *p.sigma_log_r > 0; });
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (const auto& p : used) {
        const double w = weighted ? 1.0 / (*p.sigma_log_r * *p.sigma_log_r) : 1.0;
        const double y = std::log(p.r);
        s0 += w;
        s1 += w * p.L;
        s2 += w * p.L * p.L;
        t0 += w * y;
        t1 += w * p.L * y;
    }
    const double det = s0 * s2 - s1 * s1;
    ScalingFit f;
    f.L_min = L_min;
    f.weighted = weighted;
    f.a = (s2 * t0 - s1 * t1) / det;
    f.b = (s0 * t1 - s1 * t0) / det;
    double rss = 0;
    for (const auto& p : used) {
        const double res = std::log(p.r) - (f.a + f.b * p.L);
        f.residuals.push_back(res);
        rss += res * res;
    }
    // (X^T W X)^{-1}, scaled by the residual variance when errors are unknown
    const double scale = weighted ? 1.0 : rss / static_cast<double>(used.size() - 2);
    f.covariance = {{{scale * s2 / det, -scale * s1 / det}, {-scale * s1 / det, scale * s0 / det}}};
    return f;
}

MeanSigma slope_difference(const ScalingFit& x, const ScalingFit& ref, Rng& rng, int samples) {
    if (samples < 2) throw std::invalid_argument("slope_difference: need at least 2 samples");
    std::normal_distribution<double> n01(0.0, 1.0);
    std::vector<double> d(samples);
    for (auto& v : d) {
        const double bx = x.b + x.sigma_b() * n01(rng.engine());
        const double br = ref.b + ref.sigma_b() * n01(rng.engine());
        v = bx - br;
    }
    return mean_sigma(d);
}

double euclid_distance(std::span<const double> p1, std::span<const double> p2, DistanceConvention c) {
    if (p1.size() != p2.size()) throw std::invalid_argument("euclid_distance: length mismatch");
    if (p1.empty()) throw std::invalid_argument("euclid_distance: empty vectors");
    double ss = 0;
    for (std::size_t i = 0; i < p1.size(); ++i) ss += (p1[i] - p2[i]) * (p1[i] - p2[i]);
    const double m = static_cast<double>(p1.size());
    return std::sqrt(ss) / (c == DistanceConvention::Rms ? std::sqrt(m) : m);
}

MeanSigma half_distance_bootstrap(std::span<const double> p1, std::span<const double> p2, Rng& rng, int bootstraps,
                                  DistanceConvention c) {
    if (p1.size() != p2.size()) throw std::invalid_argument("half_distance_bootstrap: length mismatch");
    if (p1.size() < 2) throw std::invalid_argument("half_distance_bootstrap: need at least 2 entries");
    const std::size_t half = p1.size() / 2;
    std::vector<std::size_t> idx(p1.size());
    std::vector<double> a(half), b(half), d(bootstraps);
    for (auto& v : d) {
        std::iota(idx.begin(), idx.end(), 0);
        // partial Fisher-Yates
        for (std::size_t i = 0; i < half; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
        std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(half));
        for (std::size_t i = 0; i < half; ++i) {
            a[i] = p1[idx[i]];
            b[i] = p2[idx[i]];
        }
        v = euclid_distance(a, b, c);
    }
    return mean_sigma(d);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("pearson: need equal lengths >= 2");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0 || syy == 0) throw std::invalid_argument("pearson: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<EnvelopePoint> optimal_envelope(const std::map<int, std::map<int, TtsPoint>>& tts_by_L_sweeps) {
    std::vector<EnvelopePoint> out;
    for (const auto& [L, by_sweeps] : tts_by_L_sweeps) {
        if (by_sweeps.size() < 2) throw std::invalid_argument("optimal_envelope: need >= 2 sweep settings per L");
        auto best = by_sweeps.begin();
        for (auto it = by_sweeps.begin(); it != by_sweeps.end(); ++it)
            if (it->second.tts < best->second.tts) best = it;
        EnvelopePoint e;
        e.L = L;
        e.sweeps = best->first;
        e.tts = best->second.tts;
        e.bracketed = best != by_sweeps.begin() && std::next(best) != by_sweeps.end();
        out.push_back(e);
    }
    return out;
}

}  // namespace frustbench
