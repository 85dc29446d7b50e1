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
 * @file engine.hpp
 * Amplified-state preparation, measurement statistics, parameter search and
 * penalty tuning.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "error.hpp"
#include "mixers.hpp"
#include "parallel.hpp"
#include "problems.hpp"
#include "statevector.hpp"

namespace qwoa {

struct RunParams {
    double gamma = 1.0;
    double t = 0.1;
    double beta = 0.5;
    int p = 1;
    Sense sense = Sense::Maximize;
    double sigma = 1.0;
    std::optional<PenaltyVector> lambda_t;
};

inline void validate(const RunParams &rp) {
    if (!(rp.gamma >= 0.0) || !(rp.t >= 0.0) || !(rp.sigma > 0.0) || !std::isfinite(rp.gamma) ||
        !std::isfinite(rp.t) || !std::isfinite(rp.sigma)) {
        throw ConfigError("gamma and t must be finite and non-negative, sigma positive");
    }
    if (!(rp.beta > 0.0 && rp.beta <= 1.0)) {
        throw ConfigError("beta must lie in (0, 1]");
    }
    if (rp.p < 1) {
        throw ConfigError("p must be at least 1");
    }
}

/// (gamma_i, t_i) for iteration i of the linear schedule.
inline std::pair<double, double> schedule(const RunParams &rp, int i) {
    if (i < 0 || i >= rp.p) {
        throw RangeError("schedule index out of range");
    }
    if (rp.p == 1) {
        return {rp.gamma, rp.t};
    }
    const double frac = static_cast<double>(i) / (rp.p - 1);
    return {(rp.beta + (1.0 - rp.beta) * frac) * rp.gamma, (1.0 - (1.0 - rp.beta) * frac) * rp.t};
}

/// Objective values over the whole space with cached optimum and ranking.
class ObjectiveTable {
  public:
    ObjectiveTable(std::vector<double> values, Sense sense)
        : values_(std::move(values)), sense_(sense) {
        if (values_.empty()) {
            throw ValidationError("objective table is empty");
        }
        optimum_ = values_[0];
        for (double v : values_) {
            if (better(sense_, v, optimum_)) {
                optimum_ = v;
            }
        }
        const double tol = 1e-12 * (1.0 + std::abs(optimum_));
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (std::abs(values_[i] - optimum_) <= tol) {
                optima_.push_back(i);
            }
        }
    }

    ObjectiveTable(const SolutionSpace &space, const ObjectiveKernel &f, Sense sense)
        : ObjectiveTable(tabulate(space, f), sense) {}

    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] Sense sense() const { return sense_; }
    [[nodiscard]] double optimum() const { return optimum_; }
    [[nodiscard]] const std::vector<Index> &optima() const { return optima_; }

    /// Indices sorted best first; ties keep ascending index order.
    [[nodiscard]] const std::vector<Index> &ranking() const {
        if (ranking_.empty()) {
            ranking_.resize(values_.size());
            std::iota(ranking_.begin(), ranking_.end(), Index{0});
            std::stable_sort(ranking_.begin(), ranking_.end(), [&](Index a, Index b) {
                return better(sense_, values_[a], values_[b]);
            });
        }
        return ranking_;
    }

  private:
    std::vector<double> values_;
    Sense sense_;
    double optimum_ = 0.0;
    std::vector<Index> optima_;
    mutable std::vector<Index> ranking_;
};

/// c_x <- c_x exp(-i s gamma_eff f(x)), s = +1 when maximising.
inline void phase_separate(Statevector &psi, std::span<const double> f, double gamma_eff,
                           Sense sense) {
    if (f.size() != psi.size()) {
        throw ValidationError("objective table length does not match the state");
    }
    if (!std::isfinite(gamma_eff)) {
        throw RangeError("phase strength must be finite");
    }
    if (gamma_eff == 0.0) {
        return;
    }
    const double s = sense == Sense::Maximize ? 1.0 : -1.0;
    Complex *c = psi.data().data();
    parallel_blocks(psi.size(), [&](std::size_t b, std::size_t e) {
        for (auto i = b; i < e; ++i) {
            const double angle = -s * gamma_eff * f[i];
            c[i] = cmul(c[i], Complex(std::cos(angle), std::sin(angle)));
        }
    });
}

struct MeasureStats {
    double expectation = 0.0;
    double cvar = 0.0;
    double optimal_probability = 0.0;
};

inline double expectation(const Statevector &psi, std::span<const double> f) {
    return block_reduce<double>(psi.size(), [&](std::size_t b, std::size_t e) {
        double acc = 0.0;
        for (auto i = b; i < e; ++i) {
            acc += std::norm(psi[i]) * f[i];
        }
        return acc;
    });
}

/// Mean objective over the best alpha of the probability mass.
inline double cvar(const Statevector &psi, const ObjectiveTable &table, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw RangeError("CVaR alpha must lie in (0, 1]");
    }
    double mass = 0.0;
    double acc = 0.0;
    for (Index i : table.ranking()) {
        const double p = std::min(std::norm(psi[i]), alpha - mass);
        acc += p * table[i];
        mass += p;
        if (mass >= alpha) {
            break;
        }
    }
    return mass > 0.0 ? acc / mass : 0.0;
}

inline double optimal_probability(const Statevector &psi, const ObjectiveTable &table) {
    double p = 0.0;
    for (Index i : table.optima()) {
        p += std::norm(psi[i]);
    }
    return p;
}

/// a_x^2 = N |c_x|^2.
inline double amplification(const Statevector &psi, Index x) {
    return static_cast<double>(psi.size()) * std::norm(psi[x]);
}

inline MeasureStats measure_stats(const Statevector &psi, const ObjectiveTable &table,
                                  double cvar_alpha = 0.1) {
    if (!(cvar_alpha > 0.0 && cvar_alpha <= 1.0)) {
        throw RangeError("CVaR alpha must lie in (0, 1]");
    }
    MeasureStats m;
    m.expectation = expectation(psi, table.values());
    m.cvar = cvar_alpha == 1.0 ? m.expectation : cvar(psi, table, cvar_alpha);
    m.optimal_probability = optimal_probability(psi, table);
    return m;
}

struct IterationMetrics {
    int iter = 0; // 1-based: metrics after this many iterations
    double optimal_probability = 0.0;
    double expectation = 0.0;
    double cvar = 0.0;
};

struct RunTrace {
    RunParams params;
    std::vector<IterationMetrics> per_iteration;
    std::optional<Statevector> final_state;
    double cvar_alpha = 0.1;
};

/// Called after each iteration with the iteration index and current state.
using IterationHook = std::function<void(int, const Statevector &)>;

/// Phase separation then mixing for i = 0..p-1, starting from |s>.
///
/// gamma_i is affine in i, so the phase factors are advanced by a fixed
/// per-iteration multiplier instead of re-evaluating sin and cos each step.
inline Statevector amplified_state(const Mixer &mixer, std::span<const double> phase_values,
                                   const RunParams &rp, const IterationHook &hook = {}) {
    validate(rp);
    auto psi = equal_superposition(mixer.space());
    if (phase_values.size() != psi.size()) {
        throw ValidationError("objective table length does not match the state");
    }
    const auto n = psi.size();
    const double s = rp.sense == Sense::Maximize ? 1.0 : -1.0;
    const double g0 = schedule(rp, 0).first / rp.sigma;
    const double dg = rp.p > 1 ? (schedule(rp, 1).first - schedule(rp, 0).first) / rp.sigma : 0.0;
    std::vector<Complex> factor(n);
    std::vector<Complex> step(rp.p > 1 ? n : 0);
    parallel_blocks(n, [&](std::size_t b, std::size_t e) {
        for (auto i = b; i < e; ++i) {
            const double a0 = -s * g0 * phase_values[i];
            factor[i] = {std::cos(a0), std::sin(a0)};
            if (rp.p > 1) {
                const double a1 = -s * dg * phase_values[i];
                step[i] = {std::cos(a1), std::sin(a1)};
            }
        }
    });
    Complex *c = psi.data().data();
    for (int it = 0; it < rp.p; ++it) {
        const bool advance = it + 1 < rp.p;
        parallel_blocks(n, [&](std::size_t b, std::size_t e) {
            for (auto i = b; i < e; ++i) {
                c[i] = cmul(c[i], factor[i]);
                if (advance) {
                    factor[i] = cmul(factor[i], step[i]);
                }
            }
        });
        mixer.apply(schedule(rp, it).second, psi);
        if (hook) {
            hook(it, psi);
        }
    }
    return psi;
}

struct RunOptions {
    double cvar_alpha = 0.1;
    bool keep_final = true;
};

/// Prepares the amplified state with phase_values in the kernel while every
/// metric is measured against metric_table.
inline RunTrace prepare_amplified(const Mixer &mixer, std::span<const double> phase_values,
                                  const ObjectiveTable &metric_table, const RunParams &rp,
                                  const RunOptions &opts = {}, const IterationHook &hook = {}) {
    RunTrace trace;
    trace.params = rp;
    trace.cvar_alpha = opts.cvar_alpha;
    auto psi = amplified_state(mixer, phase_values, rp, [&](int i, const Statevector &s) {
        const auto m = measure_stats(s, metric_table, opts.cvar_alpha);
        trace.per_iteration.push_back({i + 1, m.optimal_probability, m.expectation, m.cvar});
        if (hook) {
            hook(i, s);
        }
    });
    if (opts.keep_final) {
        trace.final_state = std::move(psi);
    }
    return trace;
}

inline RunTrace prepare_amplified(const Mixer &mixer, const ObjectiveTable &table,
                                  const RunParams &rp, const RunOptions &opts = {},
                                  const IterationHook &hook = {}) {
    return prepare_amplified(mixer, table.values(), table, rp, opts, hook);
}

// ---------------------------------------------------------------------------
// Parameter search
// ---------------------------------------------------------------------------

enum class Metric { Expectation, CVaR };

struct OptimizeOptions {
    Metric metric = Metric::Expectation;
    double cvar_alpha = 0.1;
    int max_evaluations = 500;
    double gradient_tolerance = 1e-6;
    double relative_step = 1e-3;
    double max_relative_move = 1.0;
};

struct TrajectoryPoint {
    int evaluation = 0;
    std::vector<double> x;
    double metric = 0.0;
};

struct OptimizeResult {
    RunParams params;
    std::optional<PenaltyVector> lambda_t;
    double metric = 0.0;
    bool converged = false;
    int evaluations = 0;
    double gradient_norm = 0.0;
    std::vector<TrajectoryPoint> trajectory; // accepted iterates
};

namespace detail {

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    [[nodiscard]] std::vector<double> clamp(std::vector<double> x) const {
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = std::clamp(x[i], lo[i], hi[i]);
        }
        return x;
    }
};

struct AscentOutcome {
    std::vector<double> x;
    double score = 0.0;
    bool converged = false;
    int evaluations = 0;
    double gradient_norm = 0.0;
    std::vector<TrajectoryPoint> trajectory;
};

/// Quasi-Newton ascent on score(x). Gradients come from central differences
/// with a relative step; the direction is the BFGS-preconditioned gradient,
/// capped so no coordinate moves by more than max_relative_move of its size,
/// and the line search halves from the unit step until the score improves.
/// Coordinates with active[i] == false are frozen.
inline AscentOutcome ascend(const std::function<double(const std::vector<double> &)> &score,
                            std::vector<double> x, const Box &box, const std::vector<bool> &active,
                            const OptimizeOptions &opts) {
    AscentOutcome out;
    const std::size_t dim = x.size();
    x = box.clamp(std::move(x));
    auto eval = [&](const std::vector<double> &y) {
        ++out.evaluations;
        return score(y);
    };
    auto gradient = [&](const std::vector<double> &at, std::vector<double> &g) {
        g.assign(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!active[i] || out.evaluations + 2 > opts.max_evaluations) {
                continue;
            }
            const double h = opts.relative_step * std::max(std::abs(at[i]), 1e-3);
            auto xp = at;
            auto xm = at;
            xp[i] += h;
            xm[i] -= h;
            g[i] = (eval(xp) - eval(xm)) / (2.0 * h);
        }
        double gn = 0.0;
        for (double v : g) {
            gn = std::max(gn, std::abs(v));
        }
        return gn;
    };
    auto reset = [&](std::vector<double> &H) {
        H.assign(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            H[i * dim + i] = active[i] ? 1.0 : 0.0;
        }
    };

    double fx = eval(x);
    out.trajectory.push_back({out.evaluations, x, fx});
    std::vector<double> H;
    reset(H);
    std::vector<double> g;
    std::vector<double> g_new;
    out.gradient_norm = gradient(x, g);
    while (true) {
        if (out.gradient_norm < opts.gradient_tolerance) {
            out.converged = true;
            break;
        }
        if (out.evaluations >= opts.max_evaluations) {
            break;
        }
        std::vector<double> d(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                d[i] += H[i * dim + j] * g[j];
            }
        }
        double slope = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            slope += d[i] * g[i];
        }
        if (!(slope > 0.0)) {
            reset(H);
            d = g;
        }
        double ratio = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            ratio = std::max(ratio, std::abs(d[i]) / std::max(std::abs(x[i]), 0.1));
        }
        if (ratio > opts.max_relative_move) {
            for (auto &v : d) {
                v *= opts.max_relative_move / ratio;
            }
        }
        bool improved = false;
        std::vector<double> y;
        double fy = fx;
        for (double step = 1.0; out.evaluations < opts.max_evaluations && step > 1e-10;
             step *= 0.5) {
            y.assign(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                y[i] = x[i] + step * d[i];
            }
            y = box.clamp(std::move(y));
            if (y == x) {
                break;
            }
            fy = eval(y);
            if (fy > fx) {
                improved = true;
                break;
            }
        }
        if (!improved) {
            // No ascent along the search direction: stationary to within the
            // resolution of the finite differences.
            break;
        }
        const double gn = gradient(y, g_new);
        // BFGS update of the inverse Hessian of -score.
        std::vector<double> sv(dim);
        std::vector<double> yv(dim);
        double sy = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            sv[i] = y[i] - x[i];
            yv[i] = g[i] - g_new[i];
            sy += sv[i] * yv[i];
        }
        if (sy > 1e-12) {
            std::vector<double> Hy(dim, 0.0);
            double yHy = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    Hy[i] += H[i * dim + j] * yv[j];
                }
                yHy += yv[i] * Hy[i];
            }
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    H[i * dim + j] += -rho * (Hy[i] * sv[j] + sv[i] * Hy[j]) +
                                      (rho * rho * yHy + rho) * sv[i] * sv[j];
                }
            }
        } else {
            reset(H);
        }
        x = std::move(y);
        fx = fy;
        g.swap(g_new);
        out.gradient_norm = gn;
        out.trajectory.push_back({out.evaluations, x, fx});
    }
    out.x = std::move(x);
    out.score = fx;
    return out;
}

inline double metric_of(const Statevector &psi, const ObjectiveTable &table,
                        const OptimizeOptions &opts) {
    return opts.metric == Metric::Expectation ? expectation(psi, table.values())
                                              : cvar(psi, table, opts.cvar_alpha);
}

inline Box param_box(std::size_t extra) {
    Box box;
    const double inf = std::numeric_limits<double>::infinity();
    box.lo = {1e-4, 1e-4, 1e-4};
    box.hi = {inf, inf, 1.0 - 1e-4};
    for (std::size_t i = 0; i < extra; ++i) {
        box.lo.push_back(0.0);
        box.hi.push_back(inf);
    }
    return box;
}

} // namespace detail

/// Metric of the amplified state at the given parameters.
inline double evaluate_metric(const Mixer &mixer, std::span<const double> phase_values,
                              const ObjectiveTable &metric_table, const RunParams &rp,
                              const OptimizeOptions &opts = {}) {
    return detail::metric_of(amplified_state(mixer, phase_values, rp), metric_table, opts);
}

/// Local search over (gamma, t, beta): ascent when maximising, descent when
/// minimising, starting from init.
inline OptimizeResult optimize_params(const Mixer &mixer, const ObjectiveTable &table,
                                      const RunParams &init, const OptimizeOptions &opts = {}) {
    validate(init);
    const double s = init.sense == Sense::Maximize ? 1.0 : -1.0;
    auto make = [&](const std::vector<double> &x) {
        RunParams rp = init;
        rp.gamma = x[0];
        rp.t = x[1];
        rp.beta = x[2];
        return rp;
    };
    auto score = [&](const std::vector<double> &x) {
        return s * evaluate_metric(mixer, table.values(), table, make(x), opts);
    };
    auto res = detail::ascend(score, {init.gamma, init.t, init.beta}, detail::param_box(0),
                              {true, true, true}, opts);
    OptimizeResult out;
    out.params = make(res.x);
    out.metric = s * res.score;
    out.converged = res.converged;
    out.evaluations = res.evaluations;
    out.gradient_norm = res.gradient_norm;
    out.trajectory = std::move(res.trajectory);
    for (auto &pt : out.trajectory) {
        pt.metric *= s;
    }
    return out;
}

struct TuneOptions {
    OptimizeOptions optimize;
    bool freeze_lambda = false;
    /// Recompute sigma from the lambda_T objective at every evaluation
    /// instead of keeping init.sigma.
    bool rescale_sigma = true;
};

/// Joint search over (gamma, t, beta, lambda_T). The state is prepared with
/// the lambda_T objective while the metric is always taken against the fixed
/// lambda_F table. sigma stays at init.sigma unless rescale_sigma is set.
inline OptimizeResult tune_penalty(const Mixer &mixer, const PenaltyTables &tables,
                                   const ObjectiveTable &metric_table,
                                   const PenaltyVector &lambda_f, const RunParams &init,
                                   const TuneOptions &opts = {}) {
    validate(init);
    const std::size_t m = tables.coefficient_count();
    const double s = init.sense == Sense::Maximize ? 1.0 : -1.0;
    PenaltyVector start = init.lambda_t.value_or(lambda_f);
    start.reference = lambda_f.reference;
    std::vector<double> x0 = {init.gamma, init.t, init.beta};
    for (std::size_t i = 0; i < m; ++i) {
        x0.push_back(start.at(i));
    }
    std::vector<bool> active(3 + m, true);
    for (std::size_t i = 0; i < m; ++i) {
        active[3 + i] = !opts.freeze_lambda;
    }
    auto make = [&](const std::vector<double> &x) {
        RunParams rp = init;
        rp.gamma = x[0];
        rp.t = x[1];
        rp.beta = x[2];
        PenaltyVector pv;
        pv.lambda.assign(x.begin() + 3, x.end());
        pv.reference = lambda_f.reference;
        rp.lambda_t = pv;
        return rp;
    };
    std::vector<double> phase(metric_table.size());
    auto score = [&](const std::vector<double> &x) {
        RunParams rp = make(x);
        tables.evaluate(*rp.lambda_t, phase);
        if (opts.rescale_sigma) {
            rp.sigma = table_stats(phase).stddev;
        }
        return s * evaluate_metric(mixer, phase, metric_table, rp, opts.optimize);
    };
    auto res = detail::ascend(score, x0, detail::param_box(m), active, opts.optimize);
    OptimizeResult out;
    out.params = make(res.x);
    if (opts.rescale_sigma) {
        tables.evaluate(*out.params.lambda_t, phase);
        out.params.sigma = table_stats(phase).stddev;
    }
    out.lambda_t = out.params.lambda_t;
    out.metric = s * res.score;
    out.converged = res.converged;
    out.evaluations = res.evaluations;
    out.gradient_norm = res.gradient_norm;
    out.trajectory = std::move(res.trajectory);
    for (auto &pt : out.trajectory) {
        pt.metric *= s;
    }
    return out;
}

} // namespace qwoa
