// Copyright 2026 The qwoa-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file analysis.hpp
 * Statistics of the interference process: subset means, weighted subset
 * statistics, amplification profiles, closed-form amplification curves and
 * the coherent-sum approximation with its error study.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "engine.hpp"
#include "error.hpp"
#include "mixers.hpp"
#include "problems.hpp"
#include "solution_space.hpp"
#include "statevector.hpp"

namespace qwoa {

// ---------------------------------------------------------------------------
// Amplitude decomposition
// ---------------------------------------------------------------------------

/// Index of the largest-magnitude amplitude (lowest index on ties).
inline Index reference_index(const Statevector &psi) {
    Index best = 0;
    double mag = -1.0;
    for (Index i = 0; i < psi.size(); ++i) {
        const double m = std::norm(psi[i]);
        if (m > mag) {
            mag = m;
            best = i;
        }
    }
    return best;
}

/// Phases relative to the largest-magnitude amplitude, wrapped to (-pi, pi].
inline std::vector<double> relative_phases(const Statevector &psi) {
    const double ref = std::arg(psi[reference_index(psi)]);
    std::vector<double> out(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        out[i] = wrap_phase(std::arg(psi[i]) - ref);
    }
    return out;
}

/// a_x = sqrt(N) |c_x|.
inline std::vector<double> amplitude_factors(const Statevector &psi) {
    const double root_n = std::sqrt(static_cast<double>(psi.size()));
    std::vector<double> out(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        out[i] = root_n * std::abs(psi[i]);
    }
    return out;
}

/// sqrt(-2 ln R) with R the mean resultant length of the angles.
inline double circular_stddev(std::span<const double> angles) {
    double c = 0.0;
    double s = 0.0;
    for (double a : angles) {
        c += std::cos(a);
        s += std::sin(a);
    }
    const double r = std::hypot(c, s) / static_cast<double>(angles.size());
    return r >= 1.0 ? 0.0 : std::sqrt(-2.0 * std::log(r));
}

/// Ranks with ties sharing their average rank.
inline std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
            ++j;
        }
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t m = i; m <= j; ++m) {
            rank[order[m]] = r;
        }
        i = j + 1;
    }
    return rank;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ValidationError("spearman needs two equal-length series of length >= 2");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

// ---------------------------------------------------------------------------
// Amplification profile
// ---------------------------------------------------------------------------

struct ProfilePoint {
    Index index = 0;
    double f = 0.0;
    double a2 = 0.0;
};

struct ProfileOptions {
    Index full_limit = Index{1} << 20;
    std::size_t top = 10000;
    std::size_t sample = 10000;
    std::uint64_t seed = 0;
};

/// (f(x), a_x^2) for every solution, or for the top amplitudes plus a
/// uniform sample when the space is large.
inline std::vector<ProfilePoint> amplification_profile(const Statevector &psi,
                                                       std::span<const double> f,
                                                       const ProfileOptions &opts = {}) {
    if (f.size() != psi.size()) {
        throw ValidationError("objective table length does not match the state");
    }
    const double n = static_cast<double>(psi.size());
    std::vector<ProfilePoint> out;
    if (psi.size() <= opts.full_limit) {
        out.reserve(psi.size());
        for (Index i = 0; i < psi.size(); ++i) {
            out.push_back({i, f[i], n * std::norm(psi[i])});
        }
        return out;
    }
    std::vector<Index> order(psi.size());
    std::iota(order.begin(), order.end(), Index{0});
    const auto top = std::min<std::size_t>(opts.top, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                      [&](Index a, Index b) { return std::norm(psi[a]) > std::norm(psi[b]); });
    for (std::size_t i = 0; i < top; ++i) {
        out.push_back({order[i], f[order[i]], n * std::norm(psi[order[i]])});
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<Index> pick(0, psi.size() - 1);
    for (std::size_t i = 0; i < opts.sample; ++i) {
        const Index x = pick(rng);
        out.push_back({x, f[x], n * std::norm(psi[x])});
    }
    return out;
}

struct BinnedValue {
    double center = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
};

/// Mean of y within equal-width bins of x over [min x, max x]; empty bins
/// are dropped.
inline std::vector<BinnedValue> bin_by(std::span<const double> x, std::span<const double> y,
                                       int bins) {
    if (bins < 1 || x.size() != y.size() || x.empty()) {
        throw ValidationError("bin_by needs bins >= 1 and equal non-empty series");
    }
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double width = (*hi_it - lo) / bins;
    std::vector<double> sum(static_cast<std::size_t>(bins), 0.0);
    std::vector<std::size_t> count(static_cast<std::size_t>(bins), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        int b = width > 0.0 ? static_cast<int>((x[i] - lo) / width) : 0;
        b = std::clamp(b, 0, bins - 1);
        sum[b] += y[i];
        ++count[b];
    }
    std::vector<BinnedValue> out;
    for (int b = 0; b < bins; ++b) {
        if (count[b] > 0) {
            out.push_back({lo + (b + 0.5) * width, sum[b] / static_cast<double>(count[b]), count[b]});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

inline double alpha_h(int n, int h) {
    if (n < 2 || h < 0 || h > n) {
        throw RangeError("alpha_h needs n >= 2 and 0 <= h <= n");
    }
    return 4.0 * h * (n - h) / (static_cast<double>(n) * (n - 1));
}

/// Mean maxcut objective over the solutions at Hamming distance h from u.
inline double maxcut_subset_mean_exact(const MaxcutInstance &inst, double f_u, int h) {
    const double mu = inst.total_weight() / 2.0;
    return f_u - alpha_h(inst.n, h) * (f_u - mu);
}

/// Amplification of u when each subset h_u carries an extra phase theta*h.
inline double idealized_amplification(int n, double t, double theta) {
    return std::pow(1.0 + std::sin(2.0 * t) * std::sin(theta), n);
}

/// Per-subset complex contributions C(n,h) e^{-i pi h/2} e^{i theta h}
/// cos^{n-h} t sin^h t; their sum times 1/sqrt(N) is the amplitude at u.
inline std::vector<Complex> idealized_contributions(int n, double t, double theta) {
    std::vector<Complex> out;
    for (int h = 0; h <= n; ++h) {
        const double mag = static_cast<double>(binomial(n, h)) * std::pow(std::cos(t), n - h) *
                           std::pow(std::sin(t), h);
        out.push_back(mag * std::exp(Complex(0.0, (theta - std::numbers::pi / 2) * h)));
    }
    return out;
}

/// e^{-gamma^2 sigma^2} [1 + sin 2t sin(gamma delta (f - mu))]^n.
inline double predicted_amplification(int n, double t, double gamma, double sigma, double delta,
                                      double f, double mu) {
    return std::exp(-gamma * gamma * sigma * sigma) *
           std::pow(1.0 + std::sin(2.0 * t) * std::sin(gamma * delta * (f - mu)), n);
}

// ---------------------------------------------------------------------------
// Coherent-sum approximation
// ---------------------------------------------------------------------------

struct PolarTerm {
    double r = 0.0;
    double phi = 0.0;
};

struct CoherentSum {
    Complex resultant;
    Complex approximation;
    double E = 0.0;
    double V = 0.0;
    double weight = 0.0;
};

/// Exact sum of r e^{i phi} and its (sum r) e^{-V/2} e^{iE} estimate.
inline CoherentSum approx_resultant(std::span<const PolarTerm> terms) {
    CoherentSum out;
    for (const auto &t : terms) {
        if (t.r < 0.0) {
            throw ValidationError("term weights must be non-negative");
        }
        out.weight += t.r;
    }
    if (!(out.weight > 0.0)) {
        throw ValidationError("term weights sum to zero");
    }
    for (const auto &t : terms) {
        out.E += t.r * t.phi;
        out.resultant += t.r * std::exp(Complex(0.0, t.phi));
    }
    out.E /= out.weight;
    for (const auto &t : terms) {
        out.V += t.r * (t.phi - out.E) * (t.phi - out.E);
    }
    out.V /= out.weight;
    out.approximation = out.weight * std::exp(-out.V / 2.0) * std::exp(Complex(0.0, out.E));
    return out;
}

enum class PhaseDistribution { Normal, Uniform };
enum class WeightDistribution { Uniform, IncreasingInPhase };

inline const char *to_string(PhaseDistribution d) {
    return d == PhaseDistribution::Normal ? "normal" : "uniform";
}
inline const char *to_string(WeightDistribution d) {
    return d == WeightDistribution::Uniform ? "uniform" : "increasing";
}

struct ApproxErrorPoint {
    PhaseDistribution phases;
    WeightDistribution weights;
    double sigma = 0.0;
    double phase_error_mean = 0.0;
    double phase_error_std = 0.0;
    double magnitude_error_mean = 0.0;
    double magnitude_error_std = 0.0;
};

/// Random term sets with a given phase spread, recording the approximation's
/// absolute phase error and relative magnitude error. Increasing weights are
/// r = e^{phi}.
template <class Rng>
ApproxErrorPoint approx_error_case(PhaseDistribution pd, WeightDistribution wd, double sigma,
                                   int terms, int trials, Rng &rng) {
    if (terms < 1 || trials < 1) {
        throw ValidationError("terms and trials must be positive");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double half_width = std::sqrt(3.0) * sigma;
    std::vector<PolarTerm> buf(static_cast<std::size_t>(terms));
    double pm = 0.0;
    double pm2 = 0.0;
    double mm = 0.0;
    double mm2 = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        for (auto &t : buf) {
            t.phi = pd == PhaseDistribution::Normal ? sigma * normal(rng)
                                                    : half_width * (2.0 * unit(rng) - 1.0);
            t.r = wd == WeightDistribution::Uniform ? unit(rng) : std::exp(t.phi);
        }
        const auto cs = approx_resultant(buf);
        const double pe = std::abs(wrap_phase(std::arg(cs.approximation) - std::arg(cs.resultant)));
        const double me = std::abs(std::abs(cs.approximation) - std::abs(cs.resultant)) /
                          std::abs(cs.resultant);
        pm += pe;
        pm2 += pe * pe;
        mm += me;
        mm2 += me * me;
    }
    const double n = trials;
    ApproxErrorPoint p{pd, wd, sigma};
    p.phase_error_mean = pm / n;
    p.phase_error_std = std::sqrt(std::max(0.0, pm2 / n - p.phase_error_mean * p.phase_error_mean));
    p.magnitude_error_mean = mm / n;
    p.magnitude_error_std =
        std::sqrt(std::max(0.0, mm2 / n - p.magnitude_error_mean * p.magnitude_error_mean));
    return p;
}

/// All four phase/weight cases over a grid of phase standard deviations.
/// Each (case, sigma) cell draws from its own stream derived from seed.
inline std::vector<ApproxErrorPoint> approx_error_experiment(std::span<const double> sigma_grid,
                                                             int terms, int trials,
                                                             std::uint64_t seed) {
    std::vector<ApproxErrorPoint> out;
    std::uint64_t cell = 0;
    for (auto pd : {PhaseDistribution::Normal, PhaseDistribution::Uniform}) {
        for (auto wd : {WeightDistribution::Uniform, WeightDistribution::IncreasingInPhase}) {
            for (double s : sigma_grid) {
                std::seed_seq seq{seed, cell++};
                std::mt19937_64 rng(seq);
                out.push_back(approx_error_case(pd, wd, s, terms, trials, rng));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subset means
// ---------------------------------------------------------------------------

struct SubsetMeansRow {
    double f_bin_center = 0.0;
    double f_mean = 0.0; // mean f over the solutions kept in the bin
    int h = 0;
    double mean = 0.0;   // mean over kept x of the estimated mu_hx
    double stddev = 0.0; // spread of mu_hx across kept x
    double stderr_ = 0.0; // standard error of `mean` from the finite draws
    std::size_t count = 0;
};

struct SubsetMeansOptions {
    int bins = 100;
    int per_bin = 200;
    int draws = 200;
    Index pool_limit = Index{1} << 20; // whole space below this size
    std::size_t pool_samples = 1000000;
    std::uint64_t seed = 0;
};

/// Binned subset means mu_hx: solutions are bucketed by f into equal-width
/// bins over the pool's range, up to per_bin are kept per bin, and mu_hx is
/// estimated from `draws` uniform samples of h_x.
inline std::vector<SubsetMeansRow> subset_means_sampled(const SolutionSpace &space,
                                                        const ObjectiveKernel &f,
                                                        std::span<const int> h_list,
                                                        const SubsetMeansOptions &opts = {}) {
    if (opts.bins < 1 || opts.per_bin < 1 || opts.draws < 1) {
        throw ValidationError("bins, per_bin and draws must be positive");
    }
    for (int h : h_list) {
        if (h < 0 || h > space.diameter()) {
            throw RangeError("distance outside [0, D]");
        }
    }
    std::vector<Index> pool;
    std::vector<double> pool_f;
    if (space.size() <= opts.pool_limit) {
        pool_f = tabulate(space, f);
        pool.resize(pool_f.size());
        std::iota(pool.begin(), pool.end(), Index{0});
    } else {
        std::mt19937_64 rng(opts.seed);
        Solution x(static_cast<std::size_t>(space.n()));
        for (std::size_t i = 0; i < opts.pool_samples; ++i) {
            pool.push_back(sample_index(space, rng));
            decode_into(space, pool.back(), x);
            pool_f.push_back(f(x));
        }
    }
    const auto [lo_it, hi_it] = std::minmax_element(pool_f.begin(), pool_f.end());
    const double lo = *lo_it;
    const double width = (*hi_it - lo) / opts.bins;
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(opts.bins));
    for (std::size_t i = 0; i < pool.size(); ++i) {
        int b = width > 0.0 ? static_cast<int>((pool_f[i] - lo) / width) : 0;
        members[std::clamp(b, 0, opts.bins - 1)].push_back(i);
    }

    std::vector<SubsetMeansRow> rows;
    Solution u(static_cast<std::size_t>(space.n()));
    for (int b = 0; b < opts.bins; ++b) {
        auto &mem = members[b];
        if (mem.empty()) {
            continue;
        }
        std::seed_seq seq{opts.seed, static_cast<std::uint64_t>(b) + 1};
        std::mt19937_64 rng(seq);
        const std::size_t keep = std::min<std::size_t>(mem.size(), opts.per_bin);
        for (std::size_t i = 0; i < keep; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, mem.size() - 1);
            std::swap(mem[i], mem[pick(rng)]);
        }
        double f_mean = 0.0;
        for (std::size_t i = 0; i < keep; ++i) {
            f_mean += pool_f[mem[i]];
        }
        f_mean /= static_cast<double>(keep);
        for (int h : h_list) {
            double sum = 0.0;
            double sum2 = 0.0;
            double draw_var = 0.0;
            for (std::size_t i = 0; i < keep; ++i) {
                decode_into(space, pool[mem[i]], u);
                double m = 0.0;
                double m2 = 0.0;
                for (int d = 0; d < opts.draws; ++d) {
                    const auto x = sample_at_distance(space, u, h, rng);
                    const double v = f(x);
                    m += v;
                    m2 += v * v;
                }
                m /= opts.draws;
                const double var = opts.draws > 1
                                       ? std::max(0.0, (m2 - opts.draws * m * m) / (opts.draws - 1))
                                       : 0.0;
                draw_var += var / opts.draws;
                sum += m;
                sum2 += m * m;
            }
            SubsetMeansRow row;
            row.f_bin_center = lo + (b + 0.5) * width;
            row.f_mean = f_mean;
            row.h = h;
            row.count = keep;
            row.mean = sum / static_cast<double>(keep);
            row.stddev = std::sqrt(std::max(0.0, sum2 / static_cast<double>(keep) - row.mean * row.mean));
            row.stderr_ = std::sqrt(draw_var) / static_cast<double>(keep);
            rows.push_back(row);
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Weighted subset statistics
// ---------------------------------------------------------------------------

struct WeightedSubsetStats {
    Index u = 0;
    double f_u = 0.0;
    int h = 0;
    double E_f = 0.0;
    double E_phi = 0.0;
    double E = 0.0;
    double V_f = 0.0;
    double V_phi = 0.0;
    double C = 0.0;
    double V = 0.0;
    std::size_t members = 0;
    bool exhaustive = true;
};

struct WeightedStatsOptions {
    Index exhaustive_limit = 10000;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

namespace detail {

/// Calls fn(x) for every x at Hamming distance h from u (binary or integer).
template <class Fn>
void for_each_at_distance(const SolutionSpace &space, std::span<const int> u, int h, Fn &&fn) {
    const int n = space.n();
    const int k = space.radix();
    std::vector<int> pos(static_cast<std::size_t>(h));
    std::iota(pos.begin(), pos.end(), 0);
    Solution x(u.begin(), u.end());
    std::vector<int> off(static_cast<std::size_t>(h));
    while (true) {
        std::fill(off.begin(), off.end(), 1);
        while (true) {
            for (int i = 0; i < h; ++i) {
                x[pos[i]] = (u[pos[i]] + off[i]) % k;
            }
            fn(std::span<const int>(x));
            int i = 0;
            while (i < h && ++off[i] == k) {
                off[i++] = 1;
            }
            if (i == h) {
                break;
            }
        }
        for (int i = 0; i < h; ++i) {
            x[pos[i]] = u[pos[i]];
        }
        int i = h - 1;
        while (i >= 0 && pos[i] == n - h + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++pos[i];
        for (int j = i + 1; j < h; ++j) {
            pos[j] = pos[j - 1] + 1;
        }
    }
}

} // namespace detail

/// The seven weighted statistics for each u in us and each h in [0, D], with
/// weights a_x and relative phases read from the state.
inline std::vector<WeightedSubsetStats>
weighted_subset_stats(const Statevector &psi, const Mixer &mixer, std::span<const double> f,
                      double gamma, std::span<const Index> us, const WeightedStatsOptions &opts = {}) {
    if (mixer.kind() == MixerKind::Transposition) {
        throw UnsupportedError(
            "weighted subset statistics need a mixer whose walk magnitudes are constant within "
            "each distance subset; the transposition mixer does not qualify");
    }
    const auto &space = mixer.space();
    if (psi.size() != space.size() || f.size() != psi.size()) {
        throw ValidationError("state, objective table and space sizes differ");
    }
    const auto a = amplitude_factors(psi);
    const auto phase = relative_phases(psi);
    std::vector<WeightedSubsetStats> out;
    std::mt19937_64 rng(opts.seed);
    std::vector<std::size_t> idx;
    for (Index u : us) {
        const auto us_sol = index_to_solution(space, u);
        for (int h = 0; h <= space.diameter(); ++h) {
            idx.clear();
            const bool exhaustive = subset_size(space, h) <= opts.exhaustive_limit;
            if (exhaustive) {
                detail::for_each_at_distance(space, us_sol, h, [&](std::span<const int> x) {
                    idx.push_back(encode(space, x));
                });
            } else {
                for (std::size_t s = 0; s < opts.samples; ++s) {
                    idx.push_back(encode(space, sample_at_distance(space, us_sol, h, rng)));
                }
            }
            double w = 0.0;
            double ef = 0.0;
            double ep = 0.0;
            for (auto x : idx) {
                w += a[x];
                ef += a[x] * f[x];
                ep += a[x] * phase[x];
            }
            WeightedSubsetStats st;
            st.u = u;
            st.f_u = f[u];
            st.h = h;
            st.members = idx.size();
            st.exhaustive = exhaustive;
            if (w > 0.0) {
                st.E_f = ef / w;
                st.E_phi = ep / w;
                double vf = 0.0;
                double vp = 0.0;
                double c = 0.0;
                for (auto x : idx) {
                    vf += a[x] * (f[x] - st.E_f) * (f[x] - st.E_f);
                    vp += a[x] * (phase[x] - st.E_phi) * (phase[x] - st.E_phi);
                    c += a[x] * (f[x] * (phase[x] - st.E_phi) + st.E_f * (st.E_phi - phase[x]));
                }
                st.V_f = vf / w;
                st.V_phi = vp / w;
                st.C = c / w;
            }
            st.E = -gamma * st.E_f + st.E_phi;
            st.V = gamma * gamma * st.V_f + st.V_phi - 2.0 * gamma * st.C;
            out.push_back(st);
        }
    }
    return out;
}

/// Objective value at which weighted subset means switch from increasing to
/// decreasing in h. For each u the least-squares slope of E_f over
/// h = 0..max_h is taken; the zero crossing of a linear fit of slope
/// against f(u) is returned.
inline double ef_transition_point(std::span<const WeightedSubsetStats> rows, int max_h) {
    std::vector<double> fu;
    std::vector<double> slope;
    for (std::size_t i = 0; i < rows.size();) {
        std::size_t j = i;
        double sh = 0.0;
        double se = 0.0;
        double shh = 0.0;
        double she = 0.0;
        int m = 0;
        while (j < rows.size() && rows[j].u == rows[i].u) {
            if (rows[j].h <= max_h) {
                sh += rows[j].h;
                se += rows[j].E_f;
                shh += static_cast<double>(rows[j].h) * rows[j].h;
                she += rows[j].h * rows[j].E_f;
                ++m;
            }
            ++j;
        }
        if (m >= 2) {
            fu.push_back(rows[i].f_u);
            slope.push_back((m * she - sh * se) / (m * shh - sh * sh));
        }
        i = j;
    }
    if (fu.size() < 2) {
        throw ValidationError("transition point needs at least two solutions");
    }
    const double n = static_cast<double>(fu.size());
    const double mf = std::accumulate(fu.begin(), fu.end(), 0.0) / n;
    const double ms = std::accumulate(slope.begin(), slope.end(), 0.0) / n;
    double sfs = 0.0;
    double sff = 0.0;
    for (std::size_t i = 0; i < fu.size(); ++i) {
        sfs += (fu[i] - mf) * (slope[i] - ms);
        sff += (fu[i] - mf) * (fu[i] - mf);
    }
    const double b = sfs / sff;
    return mf - ms / b;
}

} // namespace qwoa
