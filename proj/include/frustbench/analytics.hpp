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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "frustbench/rng.hpp"

namespace frustbench {

/// Beta(x + 1/2, r - x + 1/2) posterior of a success probability under the
/// Jeffreys prior.
struct SuccessPosterior {
    std::int64_t x = 0;
    std::int64_t r = 1;

    SuccessPosterior() = default;
    SuccessPosterior(std::int64_t successes, std::int64_t runs);

    double alpha() const { return static_cast<double>(x) + 0.5; }
    double beta() const { return static_cast<double>(r - x) + 0.5; }
    double mean() const { return alpha() / (static_cast<double>(r) + 1.0); }
    double sample(Rng& rng) const;
};

/// ln(1 - pd) / ln(1 - p), unrounded.
double runs_to_solution(double p, double pd = 0.99);
double tts(double runs, double tau_us);
double speedup_ratio(double tts_x, double tts_ref);

/// Nearest rank (ceil(q n), 1-based) on odd n; linear interpolation at
/// h = q (n - 1) on even n. Throws on empty input or q outside [0, 1].
double quantile(std::vector<double> values, double q);

struct MeanSigma {
    double mean = 0;
    double sigma = 0;
};

MeanSigma mean_sigma(std::span<const double> xs);

/// How an instance's per-run time turns into time-to-solution.
enum class TtsRule {
    Runs,     ///< runs_to_solution(p) * tau
    Renewal,  ///< tau / p: mean time to first success over restarted executions
};

struct InstanceSuccess {
    SuccessPosterior posterior;
    double tau_us = 1.0;
};

double instance_tts(double p, double tau_us, TtsRule rule, double pd = 0.99);

/// Resample instances with replacement, draw one p per drawn instance from
/// its posterior, and take quantile q of the per-instance TTS. Mean and
/// standard deviation over resamples.
MeanSigma bootstrap_statistic(std::span<const InstanceSuccess> instances, double q, Rng& rng, int resamples = 1000,
                              TtsRule rule = TtsRule::Runs, double pd = 0.99);

/// Same resampling, returning quantile q of the runs-to-solution (tau ignored).
MeanSigma bootstrap_runs(std::span<const InstanceSuccess> instances, double q, Rng& rng, int resamples = 1000,
                         double pd = 0.99);

struct TtsPoint {
    int L = 0;
    double alpha = 0;
    double q = 0.5;
    double tts = 0;    ///< bootstrap mean
    double sigma = 0;
    double ci_low = 0;   ///< tts - 2 sigma
    double ci_high = 0;  ///< tts + 2 sigma
    double plug_in = 0;  ///< quantile of TTS at posterior means
};

TtsPoint tts_point(std::span<const InstanceSuccess> instances, int L, double alpha, double q, Rng& rng,
                   int resamples = 1000, TtsRule rule = TtsRule::Runs);

/// a / b from paired normal draws N(a.mean, a.sigma), N(b.mean, b.sigma).
MeanSigma ratio_error(MeanSigma a, MeanSigma b, Rng& rng, int samples = 1000);

struct FitPoint {
    double L = 0;
    double r = 0;                       ///< runs (or any positive scale quantity)
    std::optional<double> sigma_log_r;  ///< known error of ln r, enables weighting
};

/// ln r = a + b L.
struct ScalingFit {
    double a = 0;
    double b = 0;
    std::array<std::array<double, 2>, 2> covariance{};
    int L_min = 4;
    std::vector<double> residuals;  ///< ln r - (a + b L) per used point
    bool weighted = false;

    double sigma_a() const;
    double sigma_b() const;
};

/// Least squares over points with L >= L_min; weighted with known errors
/// when every used point carries one. Throws with fewer than 3 distinct L.
ScalingFit scaling_fit(std::span<const FitPoint> points, int L_min = 4);

/// b_x - b_ref from independent normal draws of each slope.
MeanSigma slope_difference(const ScalingFit& x, const ScalingFit& ref, Rng& rng, int samples = 1000);

enum class DistanceConvention { Rms, Literal };

/// ||p1 - p2|| / sqrt(M) (rms) or / M (literal).
double euclid_distance(std::span<const double> p1, std::span<const double> p2,
                       DistanceConvention c = DistanceConvention::Rms);

/// Distance over random halves (without replacement), repeated.
MeanSigma half_distance_bootstrap(std::span<const double> p1, std::span<const double> p2, Rng& rng,
                                  int bootstraps = 100, DistanceConvention c = DistanceConvention::Rms);

double pearson(std::span<const double> xs, std::span<const double> ys);

struct EnvelopePoint {
    int L = 0;
    int sweeps = 0;
    double tts = 0;
    bool bracketed = true;  ///< false when the minimum sits at the smallest or largest setting
};

/// Per L, the sweep count minimizing TTS. Throws when an L has fewer than two settings.
std::vector<EnvelopePoint> optimal_envelope(const std::map<int, std::map<int, TtsPoint>>& tts_by_L_sweeps);

}  // namespace frustbench
