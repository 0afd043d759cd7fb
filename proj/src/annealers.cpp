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

#include "frustbench/annealers.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace frustbench {

namespace {

std::string num(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

std::string hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double sweep_fraction(int k, int sweeps) { return sweeps <= 1 ? 1.0 : static_cast<double>(k) / (sweeps - 1); }

/// Tracks the lowest energy seen. Without noise the integer nominal energy
/// is compared directly; with noise the dynamics energy decides and the
/// nominal energy at that moment is kept for scoring.
class BestTracker {
  public:
    BestTracker(const IsingInstance& inst, double dyn, std::int64_t raw) : noisy_(inst.noisy) { reset(dyn, raw); }

    void reset(double dyn, std::int64_t raw) {
        best_dyn_ = dyn;
        best_raw_ = raw;
    }

    void update(double dyn, std::int64_t raw) {
        if (noisy_ ? dyn < best_dyn_ : raw < best_raw_) {
            best_dyn_ = dyn;
            best_raw_ = raw;
        }
    }

    double best_dyn() const { return best_dyn_; }
    std::int64_t best_raw() const { return best_raw_; }

  private:
    bool noisy_;
    double best_dyn_ = 0;
    std::int64_t best_raw_ = 0;
};

SpinConfig random_config(const IsingInstance& inst, Rng& rng) {
    SpinConfig s(inst.n, 0);
    for (int v : inst.active) s[v] = static_cast<std::int8_t>(rng.spin());
    return s;
}

double scaled(const IsingInstance& inst, double dyn, std::int64_t raw) {
    return inst.noisy ? dyn : static_cast<double>(raw) / inst.scale_factor;
}

}  // namespace

void validate(const SaParams& p) {
    if (p.sweeps < 2) throw std::invalid_argument("SA: sweeps must be >= 2");
    if (!(p.beta_i > 0) || !(p.beta_f > p.beta_i)) throw std::invalid_argument("SA: need beta_f > beta_i > 0");
}

void validate(const SqaParams& p) {
    if (p.sweeps < 1) throw std::invalid_argument("SQA: sweeps must be >= 1");
    if (p.trotter_slices < 2) throw std::invalid_argument("SQA: need at least 2 Trotter slices");
    if (!(p.beta > 0)) throw std::invalid_argument("SQA: beta must be positive");
    if (p.readout == SliceReadout::FixedSlice && (p.fixed_slice < 0 || p.fixed_slice >= p.trotter_slices))
        throw std::invalid_argument("SQA: fixed readout slice out of range");
}

void validate(const SssvParams& p) {
    if (p.sweeps < 1) throw std::invalid_argument("SSSV: sweeps must be >= 1");
    if (!(p.beta > 0)) throw std::invalid_argument("SSSV: beta must be positive");
    if (p.proposal == RotorProposal::Gaussian && !(p.gaussian_width > 0))
        throw std::invalid_argument("SSSV: Gaussian proposal width must be positive");
}

std::string canonical(const SaParams& p) {
    return "sa;sweeps=" + std::to_string(p.sweeps) + ";beta_i=" + num(p.beta_i) + ";beta_f=" + num(p.beta_f) +
           ";mode=" + (p.mode == AnnealMode::Solver ? "sas" : "saa");
}

std::string canonical(const SqaParams& p) {
    static constexpr const char* readouts[] = {"min", "random", "fixed"};
    return "sqa;sweeps=" + std::to_string(p.sweeps) + ";slices=" + std::to_string(p.trotter_slices) +
           ";beta=" + num(p.beta) + ";schedule=" + hex(fnv1a(p.schedule.str())) +
           ";mode=" + (p.mode == AnnealMode::Solver ? "sqas" : "sqaa") +
           ";readout=" + readouts[static_cast<int>(p.readout)] +
           (p.readout == SliceReadout::FixedSlice ? ";slice=" + std::to_string(p.fixed_slice) : "");
}

std::string canonical(const SssvParams& p) {
    return "sssv;sweeps=" + std::to_string(p.sweeps) + ";beta=" + num(p.beta) +
           ";schedule=" + hex(fnv1a(p.schedule.str())) +
           (p.proposal == RotorProposal::Uniform ? ";proposal=uniform" : ";proposal=gauss:" + num(p.gaussian_width));
}

bool metropolis_accept(double delta_e, double beta, Rng& rng) {
    if (delta_e <= 0) return true;
    return rng.uniform() < std::exp(-beta * delta_e);
}

double transverse_coupling(double a_eff) {
    if (!(a_eff > 0)) throw std::invalid_argument("transverse_coupling: A_eff must be positive");
    return -0.5 * std::log(std::tanh(a_eff));
}

double cluster_add_probability(double a_eff) {
    if (a_eff < 0) throw std::invalid_argument("cluster_add_probability: A_eff must be >= 0");
    return 1.0 - std::tanh(a_eff);
}

TimeCluster grow_time_cluster(std::span<const std::int8_t> column, int seed_slice, double p_add, Rng& rng) {
    const int m = static_cast<int>(column.size());
    const std::int8_t s0 = column[seed_slice];
    TimeCluster c{seed_slice, 1, 0, 0};
    // forward
    int fwd = 0;
    while (c.length < m) {
        const int t = (seed_slice + fwd + 1) % m;
        if (column[t] != s0) break;
        ++c.attempts;
        if (!(rng.uniform() < p_add)) break;
        ++c.added;
        ++fwd;
        ++c.length;
    }
    // backward; stops before meeting the forward end
    while (c.length < m) {
        const int t = (c.start - 1 + m) % m;
        if (column[t] != s0) break;
        ++c.attempts;
        if (!(rng.uniform() < p_add)) break;
        ++c.added;
        c.start = t;
        ++c.length;
    }
    return c;
}

RunOutcome sa_run(const IsingInstance& inst, const SaParams& p, Rng& rng) {
    validate(p);
    SpinConfig s = random_config(inst, rng);
    double e_dyn = inst.dynamics_energy(s);
    std::int64_t e_raw = inst.nominal_raw_energy(s);
    BestTracker best(inst, e_dyn, e_raw);
    const double dbeta = (p.beta_f - p.beta_i) / (p.sweeps - 1);
    for (int k = 0; k < p.sweeps; ++k) {
        const double beta = p.beta_i + k * dbeta;
        metropolis_sweep(inst, s, beta, rng, [&](double de, int de_raw) {
            e_dyn += de;
            e_raw += de_raw;
            best.update(e_dyn, e_raw);
        });
    }
    RunOutcome out;
    out.best_energy = scaled(inst, best.best_dyn(), best.best_raw());
    out.final_energy = scaled(inst, e_dyn, e_raw);
    out.best_success = inst.is_ground(best.best_raw());
    out.final_success = inst.is_ground(e_raw);
    out.success = p.mode == AnnealMode::Solver ? out.best_success : out.final_success;
    out.sweeps_used = p.sweeps;
    out.wall_model_time_us = p.sweeps * kTauSaUs;
    return out;
}

RunOutcome sqa_run(const IsingInstance& inst, const SqaParams& p, Rng& rng) {
    validate(p);
    const int m = p.trotter_slices;
    // site-major: the imaginary-time column of vertex v is spins[v*m, v*m+m)
    std::vector<std::int8_t> spins(static_cast<std::size_t>(inst.n) * m, 0);
    {
        const SpinConfig init = random_config(inst, rng);
        for (int v : inst.active)
            for (int t = 0; t < m; ++t) spins[static_cast<std::size_t>(v) * m + t] = init[v];
    }
    auto slice_config = [&](int t) {
        SpinConfig c(inst.n, 0);
        for (int v : inst.active) c[v] = spins[static_cast<std::size_t>(v) * m + t];
        return c;
    };
    std::vector<double> e_dyn(m);
    std::vector<std::int64_t> e_raw(m);
    {
        const SpinConfig c0 = slice_config(0);
        std::fill(e_dyn.begin(), e_dyn.end(), inst.dynamics_energy(c0));
        std::fill(e_raw.begin(), e_raw.end(), inst.nominal_raw_energy(c0));
    }
    BestTracker best(inst, e_dyn[0], e_raw[0]);
    std::vector<double> d_dyn(m);
    std::vector<int> d_raw(m);

    for (int k = 0; k < p.sweeps; ++k) {
        const auto pt = p.schedule.at(sweep_fraction(k, p.sweeps));
        const double trotter = p.beta / m;
        const double p_add = cluster_add_probability(trotter * pt.A);
        const double spatial = trotter * pt.B;
        for (int v : inst.sweep_order) {
            const std::span<const std::int8_t> column(spins.data() + static_cast<std::size_t>(v) * m, m);
            const auto cl = grow_time_cluster(column, static_cast<int>(rng.below(m)), p_add, rng);
            double de_total = 0;
            for (int i = 0; i < cl.length; ++i) {
                const int t = (cl.start + i) % m;
                double h = 0;
                int h_raw = 0;
                for (int q = inst.nbr_offset[v]; q < inst.nbr_offset[v + 1]; ++q) {
                    const int sj = spins[static_cast<std::size_t>(inst.nbr[q]) * m + t];
                    h += inst.nbr_weight[q] * sj;
                    h_raw += inst.nbr_raw[q] * sj;
                }
                const int si = column[t];
                d_dyn[i] = -2.0 * si * h;
                d_raw[i] = -2 * si * h_raw;
                de_total += d_dyn[i];
            }
            if (!metropolis_accept(spatial * de_total, 1.0, rng)) continue;
            for (int i = 0; i < cl.length; ++i) {
                const int t = (cl.start + i) % m;
                auto& sv = spins[static_cast<std::size_t>(v) * m + t];
                sv = static_cast<std::int8_t>(-sv);
                e_dyn[t] += d_dyn[i];
                e_raw[t] += d_raw[i];
                best.update(e_dyn[t], e_raw[t]);
            }
        }
    }

    int read = 0;
    switch (p.readout) {
        case SliceReadout::MinSlice:
            for (int t = 1; t < m; ++t)
                if (inst.noisy ? e_dyn[t] < e_dyn[read] : e_raw[t] < e_raw[read]) read = t;
            break;
        case SliceReadout::RandomSlice: read = static_cast<int>(rng.below(m)); break;
        case SliceReadout::FixedSlice: read = p.fixed_slice; break;
    }
    RunOutcome out;
    out.best_energy = scaled(inst, best.best_dyn(), best.best_raw());
    out.final_energy = scaled(inst, e_dyn[read], e_raw[read]);
    out.best_success = inst.is_ground(best.best_raw());
    out.final_success = inst.is_ground(e_raw[read]);
    out.success = p.mode == AnnealMode::Solver ? out.best_success : out.final_success;
    out.sweeps_used = p.sweeps;
    out.wall_model_time_us = p.sweeps * kTauSqaUs;
    return out;
}

double rotor_energy(const IsingInstance& inst, std::span<const double> theta, double A, double B) {
    double e = 0;
    for (int v : inst.active) e -= A * std::sin(theta[v]);
    for (std::size_t k = 0; k < inst.edges.size(); ++k)
        e += B * inst.weights[k] * std::cos(theta[inst.edges[k].first]) * std::cos(theta[inst.edges[k].second]);
    return e;
}

SpinConfig project_rotors(const IsingInstance& inst, std::span<const double> theta) {
    SpinConfig s(inst.n, 0);
    for (int v : inst.active) s[v] = std::cos(theta[v]) >= 0 ? 1 : -1;
    return s;
}

RunOutcome sssv_run(const IsingInstance& inst, const SssvParams& p, Rng& rng) {
    validate(p);
    constexpr double pi = std::numbers::pi;
    std::vector<double> theta(inst.n, 0.0), cos_t(inst.n, 0.0), sin_t(inst.n, 0.0);
    for (int v : inst.active) {
        theta[v] = pi * rng.uniform();
        cos_t[v] = std::cos(theta[v]);
        sin_t[v] = std::sin(theta[v]);
    }
    auto gaussian = [&rng] {
        // Box-Muller on our own uniform draws keeps streams portable
        const double u1 = 1.0 - rng.uniform();
        const double u2 = rng.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    };
    for (int k = 0; k < p.sweeps; ++k) {
        const auto pt = p.schedule.at(sweep_fraction(k, p.sweeps));
        for (int v : inst.sweep_order) {
            double proposal;
            if (p.proposal == RotorProposal::Uniform) {
                proposal = pi * rng.uniform();
            } else {
                proposal = theta[v] + p.gaussian_width * gaussian();
                // reflect into [0, pi]
                proposal = std::fmod(std::abs(proposal), 2.0 * pi);
                if (proposal > pi) proposal = 2.0 * pi - proposal;
            }
            double h = 0;
            for (int q = inst.nbr_offset[v]; q < inst.nbr_offset[v + 1]; ++q) h += inst.nbr_weight[q] * cos_t[inst.nbr[q]];
            const double c_new = std::cos(proposal), s_new = std::sin(proposal);
            const double dh = -pt.A * (s_new - sin_t[v]) + pt.B * (c_new - cos_t[v]) * h;
            if (metropolis_accept(dh, p.beta, rng)) {
                theta[v] = proposal;
                cos_t[v] = c_new;
                sin_t[v] = s_new;
            }
        }
    }
    const SpinConfig s = project_rotors(inst, theta);
    const auto raw = inst.nominal_raw_energy(s);
    RunOutcome out;
    out.final_energy = out.best_energy = scaled(inst, inst.dynamics_energy(s), raw);
    out.final_success = out.best_success = out.success = inst.is_ground(raw);
    out.sweeps_used = p.sweeps;
    out.wall_model_time_us = p.sweeps * kTauSssvUs;
    return out;
}

std::string solver_name(const McParams& p) {
    static constexpr const char* names[] = {"sa", "sqa", "sssv"};
    return names[p.index()];
}

std::string mode_name(const McParams& p) {
    return std::visit(
        [](const auto& q) -> std::string {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, SaParams>) return q.mode == AnnealMode::Solver ? "sas" : "saa";
            else if constexpr (std::is_same_v<T, SqaParams>) return q.mode == AnnealMode::Solver ? "sqas" : "sqaa";
            else return "sssv";
        },
        p);
}

double tau_per_run_us(const McParams& p) {
    return std::visit(
        [](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, SaParams>) return q.sweeps * kTauSaUs;
            else if constexpr (std::is_same_v<T, SqaParams>) return q.sweeps * kTauSqaUs;
            else return q.sweeps * kTauSssvUs;
        },
        p);
}

std::uint64_t run_seed(std::uint64_t master_seed, const std::string& instance_id, std::int64_t run_index) {
    return derive_seed(master_seed, {fnv1a(instance_id), static_cast<std::uint64_t>(run_index)});
}

RunRecord run_batch(const IsingInstance& inst, const std::string& instance_id, const McParams& params, int n_runs,
                    std::uint64_t master_seed, int workers) {
    if (n_runs < 1) throw std::invalid_argument("run_batch: n_runs must be >= 1");
    std::visit([](const auto& q) { validate(q); }, params);
    std::vector<char> ok(n_runs, 0);
    parallel_for(n_runs, workers, [&](std::size_t i) {
        Rng rng(run_seed(master_seed, instance_id, static_cast<std::int64_t>(i)));
        const RunOutcome o = std::visit(
            [&](const auto& q) {
                using T = std::decay_t<decltype(q)>;
                if constexpr (std::is_same_v<T, SaParams>) return sa_run(inst, q, rng);
                else if constexpr (std::is_same_v<T, SqaParams>) return sqa_run(inst, q, rng);
                else return sssv_run(inst, q, rng);
            },
            params);
        ok[i] = o.success ? 1 : 0;
    });
    RunRecord rec;
    rec.instance_id = instance_id;
    rec.solver = solver_name(params);
    rec.params = std::visit([](const auto& q) { return canonical(q); }, params);
    rec.params_hash = params_hash(rec.params);
    rec.runs = n_runs;
    for (char c : ok) rec.successes += c;
    rec.tau_per_run_us = tau_per_run_us(params);
    rec.mode = mode_name(params);
    rec.sweeps = std::visit([](const auto& q) { return static_cast<std::int64_t>(q.sweeps); }, params);
    int L = 0, idx = 0;
    std::string a;
    if (split_instance_id(instance_id, L, a, idx)) {
        rec.L = L;
        rec.alpha = a;
    }
    return rec;
}

}  // namespace frustbench
