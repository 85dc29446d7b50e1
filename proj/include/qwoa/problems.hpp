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
 * @file problems.hpp
 * Problem payloads, objective and penalty functions for the five supported
 * problem classes, and exact or sampled objective statistics.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "solution_space.hpp"

namespace qwoa {

enum class Sense { Maximize, Minimize };

inline const char *to_string(Sense s) { return s == Sense::Maximize ? "maximize" : "minimize"; }

/// True when a is strictly better than b under the sense.
inline bool better(Sense s, double a, double b) { return s == Sense::Maximize ? a > b : a < b; }

using ObjectiveKernel = std::function<double(std::span<const int>)>;

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct WeightedEdge {
    int i;
    int j;
    double weight;
};

struct MaxcutInstance {
    int n = 0;
    std::vector<WeightedEdge> edges;

    [[nodiscard]] double total_weight() const {
        double s = 0.0;
        for (const auto &e : edges) {
            s += e.weight;
        }
        return s;
    }
};

struct KMeansInstance {
    int n = 0;
    int k = 0;
    std::vector<std::vector<double>> points;
};

/// Row-major square matrix.
struct SquareMatrix {
    int n = 0;
    std::vector<double> values;

    SquareMatrix() = default;
    explicit SquareMatrix(int size) : n(size), values(static_cast<std::size_t>(size) * size, 0.0) {}

    double &operator()(int r, int c) { return values[static_cast<std::size_t>(r) * n + c]; }
    double operator()(int r, int c) const { return values[static_cast<std::size_t>(r) * n + c]; }
};

struct QapInstance {
    int n = 0;
    SquareMatrix L; // location distances
    SquareMatrix F; // facility flows
};

struct MisInstance {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

struct CflpInstance {
    int n = 0; // customers
    int k = 0; // candidate locations
    std::vector<std::int64_t> R;   // demands, length n
    std::vector<std::int64_t> C;   // capacities, length k
    std::vector<std::vector<double>> L; // n x k transport costs
    std::vector<double> F;         // opening costs, length k
};

using ProblemInstance =
    std::variant<MaxcutInstance, KMeansInstance, QapInstance, MisInstance, CflpInstance>;

/// Penalty coefficients plus the optional reference solution used by the
/// third facility-location term.
struct PenaltyVector {
    std::vector<double> lambda;
    std::optional<Solution> reference;

    [[nodiscard]] double at(std::size_t i) const { return i < lambda.size() ? lambda[i] : 0.0; }
};

inline void validate(const MaxcutInstance &inst) {
    if (inst.n < 2) {
        throw ValidationError("maxcut needs n >= 2");
    }
    for (const auto &e : inst.edges) {
        if (!(0 <= e.i && e.i < e.j && e.j < inst.n)) {
            throw ValidationError("maxcut edge must satisfy 0 <= i < j < n");
        }
        if (!(e.weight > 0.0)) {
            throw ValidationError("maxcut weights must be positive");
        }
    }
}

inline void validate(const KMeansInstance &inst) {
    if (!(inst.n >= inst.k && inst.k >= 2)) {
        throw ValidationError("k-means needs n >= k >= 2");
    }
    if (static_cast<int>(inst.points.size()) != inst.n) {
        throw ValidationError("k-means point count does not match n");
    }
    for (const auto &p : inst.points) {
        if (p.size() != inst.points.front().size()) {
            throw ValidationError("k-means points must share one dimension");
        }
    }
}

inline void validate(const QapInstance &inst) {
    if (inst.n < 2 || inst.L.n != inst.n || inst.F.n != inst.n) {
        throw ValidationError("qap matrices must be n x n");
    }
    for (int i = 0; i < inst.n; ++i) {
        if (inst.L(i, i) != 0.0) {
            throw ValidationError("qap distance matrix needs a zero diagonal");
        }
        for (int j = 0; j < inst.n; ++j) {
            if (inst.L(i, j) != inst.L(j, i)) {
                throw ValidationError("qap distance matrix must be symmetric");
            }
            if (inst.F(i, j) < 0.0) {
                throw ValidationError("qap flows must be non-negative");
            }
        }
    }
}

inline void validate(const MisInstance &inst) {
    if (inst.n < 1) {
        throw ValidationError("mis needs n >= 1");
    }
    for (auto [i, j] : inst.edges) {
        if (i == j || i < 0 || j < 0 || i >= inst.n || j >= inst.n) {
            throw ValidationError("mis edges must join distinct vertices in [0, n)");
        }
    }
}

inline void validate(const CflpInstance &inst) {
    if (inst.n < 1 || inst.k < 2) {
        throw ValidationError("cflp needs n >= 1 and k >= 2");
    }
    if (static_cast<int>(inst.R.size()) != inst.n || static_cast<int>(inst.C.size()) != inst.k ||
        static_cast<int>(inst.F.size()) != inst.k || static_cast<int>(inst.L.size()) != inst.n) {
        throw ValidationError("cflp array lengths do not match n and k");
    }
    for (const auto &row : inst.L) {
        if (static_cast<int>(row.size()) != inst.k) {
            throw ValidationError("cflp transport matrix must be n x k");
        }
        for (double v : row) {
            if (v < 0.0) {
                throw ValidationError("cflp transport costs must be non-negative");
            }
        }
    }
    for (auto r : inst.R) {
        if (r < 0) {
            throw ValidationError("cflp demands must be non-negative");
        }
    }
    for (auto c : inst.C) {
        if (c <= 0) {
            throw ValidationError("cflp capacities must be positive");
        }
    }
    for (double f : inst.F) {
        if (f < 0.0) {
            throw ValidationError("cflp opening costs must be non-negative");
        }
    }
}

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

/// Total weight of cut edges.
inline double maxcut_objective(const MaxcutInstance &inst, std::span<const int> x) {
    double f = 0.0;
    for (const auto &e : inst.edges) {
        const int d = x[e.i] - x[e.j];
        f += e.weight * static_cast<double>(d * d);
    }
    return f;
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

/// Number of distinct cluster labels used by x.
inline int cluster_count(std::span<const int> x) {
    std::uint64_t used = 0;
    for (int v : x) {
        used |= std::uint64_t{1} << v;
    }
    return std::popcount(used);
}

/// Sum over clusters of (1/|C|) times the squared distances of all ordered
/// pairs inside the cluster. Empty clusters contribute nothing.
class KMeansKernel {
  public:
    explicit KMeansKernel(const KMeansInstance &inst) : n_(inst.n), k_(inst.k) {
        validate(inst);
        pair_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b) {
                pair_[static_cast<std::size_t>(a) * n_ + b] =
                    squared_distance(inst.points[a], inst.points[b]);
            }
        }
    }

    double operator()(std::span<const int> x) const {
        std::vector<double> within(static_cast<std::size_t>(k_), 0.0);
        std::vector<int> size(static_cast<std::size_t>(k_), 0);
        for (int a = 0; a < n_; ++a) {
            ++size[x[a]];
            for (int b = a + 1; b < n_; ++b) {
                if (x[a] == x[b]) {
                    within[x[a]] += 2.0 * pair_[static_cast<std::size_t>(a) * n_ + b];
                }
            }
        }
        double f = 0.0;
        for (int c = 0; c < k_; ++c) {
            if (size[c] > 0) {
                f += within[c] / size[c];
            }
        }
        return f;
    }

  private:
    int n_;
    int k_;
    std::vector<double> pair_;
};

inline double kmeans_objective(const KMeansInstance &inst, std::span<const int> x) {
    return KMeansKernel(inst)(x);
}

/// f(x) - (mu_{c(x)} - mu_k); cluster_means[j-1] holds mu_j.
inline double kmeans_transformed_objective(const KMeansInstance &inst, std::span<const int> x,
                                           std::span<const double> cluster_means) {
    if (static_cast<int>(cluster_means.size()) != inst.k) {
        throw ValidationError("cluster means must have k entries");
    }
    const int c = cluster_count(x);
    return kmeans_objective(inst, x) - (cluster_means[c - 1] - cluster_means[inst.k - 1]);
}

/// Sum over ordered (i, j) of F_ij L_{x_i x_j}.
inline double qap_objective(const QapInstance &inst, std::span<const int> x) {
    double f = 0.0;
    for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) {
            f += inst.F(i, j) * inst.L(x[i], x[j]);
        }
    }
    return f;
}

/// Number of edges with both endpoints selected.
inline int mis_violations(const MisInstance &inst, std::span<const int> x) {
    int count = 0;
    for (auto [i, j] : inst.edges) {
        count += x[i] * x[j];
    }
    return count;
}

inline double mis_objective(const MisInstance &inst, std::span<const int> x,
                            const PenaltyVector &penalty) {
    int selected = 0;
    for (int v : x) {
        selected += v;
    }
    const int p1 = mis_violations(inst, x);
    const int p2 = p1 > 0 ? 1 : 0;
    return static_cast<double>(selected) - penalty.at(0) * p1 - penalty.at(1) * p2;
}

/// Facility-location cost model with capacity penalties.
class CflpModel {
  public:
    explicit CflpModel(const CflpInstance &inst) : inst_(inst) {
        validate(inst);
        double sum_l = 0.0;
        for (const auto &row : inst.L) {
            for (double v : row) {
                sum_l += v;
            }
        }
        mean_transport_ = sum_l / (static_cast<double>(inst.n) * inst.k);
        mean_opening_ = std::accumulate(inst.F.begin(), inst.F.end(), 0.0) / inst.k;
    }

    [[nodiscard]] const CflpInstance &instance() const { return inst_; }
    [[nodiscard]] double mean_transport() const { return mean_transport_; }
    [[nodiscard]] double mean_opening() const { return mean_opening_; }

    /// Transport plus opening cost, without penalties.
    [[nodiscard]] double cost(std::span<const int> x) const {
        double f = 0.0;
        std::uint64_t open = 0;
        for (int j = 0; j < inst_.n; ++j) {
            f += static_cast<double>(inst_.R[j]) * inst_.L[j][x[j]];
            open |= std::uint64_t{1} << x[j];
        }
        for (int i = 0; i < inst_.k; ++i) {
            if ((open >> i) & 1U) {
                f += inst_.F[i];
            }
        }
        return f;
    }

    [[nodiscard]] std::vector<std::int64_t> loads(std::span<const int> x) const {
        std::vector<std::int64_t> load(static_cast<std::size_t>(inst_.k), 0);
        for (int j = 0; j < inst_.n; ++j) {
            load[x[j]] += inst_.R[j];
        }
        return load;
    }

    [[nodiscard]] bool is_valid(std::span<const int> x) const {
        const auto load = loads(x);
        for (int i = 0; i < inst_.k; ++i) {
            if (load[i] > inst_.C[i]) {
                return false;
            }
        }
        return true;
    }

    /// Cost plus the variable and fixed over-capacity terms.
    [[nodiscard]] double capacity_penalised(std::span<const int> x, double lambda1,
                                            double lambda2) const {
        double g = cost(x);
        const auto load = loads(x);
        for (int i = 0; i < inst_.k; ++i) {
            const std::int64_t excess = load[i] - inst_.C[i];
            if (excess > 0) {
                const std::int64_t blocks = (excess + inst_.C[i] - 1) / inst_.C[i];
                g += lambda1 * mean_transport_ * static_cast<double>(excess) +
                     lambda2 * mean_opening_ * static_cast<double>(blocks);
            }
        }
        return g;
    }

    /// Full penalised objective; the third term pulls invalid solutions
    /// towards the penalised value of the reference solution.
    [[nodiscard]] double penalised(std::span<const int> x, const PenaltyVector &penalty) const {
        const double l1 = penalty.at(0);
        const double l2 = penalty.at(1);
        const double l3 = penalty.at(2);
        const double g = capacity_penalised(x, l1, l2);
        if (l3 == 0.0 || is_valid(x)) {
            return g;
        }
        if (!penalty.reference) {
            throw ConfigError("cflp third penalty term needs a reference solution");
        }
        const double gy = capacity_penalised(*penalty.reference, l1, l2);
        return g - l3 * (g - gy);
    }

  private:
    CflpInstance inst_;
    double mean_transport_ = 0.0;
    double mean_opening_ = 0.0;
};

inline double cflp_objective(const CflpInstance &inst, std::span<const int> x,
                             const PenaltyVector &penalty) {
    return CflpModel(inst).penalised(x, penalty);
}

// ---------------------------------------------------------------------------
// Problem facade
// ---------------------------------------------------------------------------

inline const char *kind_name(const ProblemInstance &p) {
    constexpr const char *names[] = {"maxcut", "kmeans", "qap", "mis", "cflp"};
    return names[p.index()];
}

inline SolutionSpace space_of(const ProblemInstance &p) {
    return std::visit(
        [](const auto &inst) -> SolutionSpace {
            using T = std::decay_t<decltype(inst)>;
            if constexpr (std::is_same_v<T, MaxcutInstance> || std::is_same_v<T, MisInstance>) {
                return SolutionSpace::binary(inst.n);
            } else if constexpr (std::is_same_v<T, QapInstance>) {
                return SolutionSpace::permutation(inst.n);
            } else {
                return SolutionSpace::integer(inst.n, inst.k);
            }
        },
        p);
}

inline Sense sense_of(const ProblemInstance &p) {
    return (std::holds_alternative<MaxcutInstance>(p) || std::holds_alternative<MisInstance>(p))
               ? Sense::Maximize
               : Sense::Minimize;
}

inline bool uses_penalty(const ProblemInstance &p) {
    return std::holds_alternative<MisInstance>(p) || std::holds_alternative<CflpInstance>(p);
}

inline void validate(const ProblemInstance &p) {
    std::visit([](const auto &inst) { validate(inst); }, p);
}

/// Objective kernel for any instance; the penalty applies to MIS and CFLP.
inline ObjectiveKernel make_kernel(const ProblemInstance &p, const PenaltyVector &penalty = {}) {
    validate(p);
    for (double l : penalty.lambda) {
        if (l < 0.0) {
            throw ConfigError("penalty coefficients must be non-negative");
        }
    }
    return std::visit(
        [&](const auto &inst) -> ObjectiveKernel {
            using T = std::decay_t<decltype(inst)>;
            if constexpr (std::is_same_v<T, MaxcutInstance>) {
                return [inst](std::span<const int> x) { return maxcut_objective(inst, x); };
            } else if constexpr (std::is_same_v<T, KMeansInstance>) {
                return KMeansKernel(inst);
            } else if constexpr (std::is_same_v<T, QapInstance>) {
                return [inst](std::span<const int> x) { return qap_objective(inst, x); };
            } else if constexpr (std::is_same_v<T, MisInstance>) {
                return [inst, penalty](std::span<const int> x) {
                    return mis_objective(inst, x, penalty);
                };
            } else {
                if (penalty.at(2) > 0.0 && !penalty.reference) {
                    throw ConfigError("cflp third penalty term needs a reference solution");
                }
                return [model = CflpModel(inst), penalty](std::span<const int> x) {
                    return model.penalised(x, penalty);
                };
            }
        },
        p);
}

/// Whether x satisfies the instance's hard constraints (always true for
/// unconstrained problems).
inline bool is_valid(const ProblemInstance &p, std::span<const int> x) {
    if (const auto *mis = std::get_if<MisInstance>(&p)) {
        return mis_violations(*mis, x) == 0;
    }
    if (const auto *cflp = std::get_if<CflpInstance>(&p)) {
        return CflpModel(*cflp).is_valid(x);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Tabulation and statistics
// ---------------------------------------------------------------------------

inline constexpr Index kExactLimit = Index{1} << 22;

/// f evaluated at every index of the space.
inline std::vector<double> tabulate(const SolutionSpace &space, const ObjectiveKernel &f) {
    if (space.size() > kExactLimit) {
        throw UnsupportedError("tabulation limited to N <= 2^22");
    }
    const auto n = static_cast<std::size_t>(space.size());
    std::vector<double> values(n);
    parallel_blocks(n, [&](std::size_t begin, std::size_t end) {
        Solution x(static_cast<std::size_t>(space.n()));
        decode_into(space, begin, x);
        for (auto i = begin; i < end; ++i) {
            values[i] = f(x);
            if (i + 1 == end) {
                break;
            }
            if (space.kind() == SpaceKind::Permutation) {
                std::next_permutation(x.begin(), x.end());
            } else {
                for (auto &v : x) {
                    if (++v < space.radix()) {
                        break;
                    }
                    v = 0;
                }
            }
        }
    });
    return values;
}

enum class StatsMethod { Exact, Sampled };

struct ObjectiveStats {
    double mean = 0.0;
    double stddev = 0.0;
    StatsMethod method = StatsMethod::Exact;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
};

struct StatsOptions {
    enum class Mode { Auto, Exact, Sampled } mode = Mode::Auto;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
};

/// Population mean and standard deviation of a value table.
inline ObjectiveStats table_stats(std::span<const double> values) {
    const auto n = values.size();
    const double mean = block_reduce<double>(n, [&](std::size_t b, std::size_t e) {
                            double s = 0.0;
                            for (auto i = b; i < e; ++i) {
                                s += values[i];
                            }
                            return s;
                        }) /
                        static_cast<double>(n);
    const double var = block_reduce<double>(n, [&](std::size_t b, std::size_t e) {
                           double s = 0.0;
                           for (auto i = b; i < e; ++i) {
                               const double d = values[i] - mean;
                               s += d * d;
                           }
                           return s;
                       }) /
                       static_cast<double>(n);
    return {mean, std::sqrt(var), StatsMethod::Exact, n, 0};
}

inline ObjectiveStats objective_stats(const ObjectiveKernel &f, const SolutionSpace &space,
                                      const StatsOptions &opts = {}) {
    const bool exact = opts.mode == StatsOptions::Mode::Exact ||
                       (opts.mode == StatsOptions::Mode::Auto && space.size() <= kExactLimit);
    if (exact) {
        return table_stats(tabulate(space, f));
    }
    std::mt19937_64 rng(opts.seed);
    const std::uint64_t count = std::max<std::uint64_t>(opts.samples, 10000);
    double mean = 0.0;
    double m2 = 0.0;
    Solution x(static_cast<std::size_t>(space.n()));
    for (std::uint64_t s = 1; s <= count; ++s) {
        decode_into(space, sample_index(space, rng), x);
        const double v = f(x);
        const double delta = v - mean;
        mean += delta / static_cast<double>(s);
        m2 += delta * (v - mean);
    }
    return {mean, std::sqrt(m2 / static_cast<double>(count)), StatsMethod::Sampled, count,
            opts.seed};
}

// ---------------------------------------------------------------------------
// Penalty decomposition
// ---------------------------------------------------------------------------

/// Penalised objective split into tabulated components so that new penalty
/// coefficients cost one linear pass instead of a full re-evaluation.
/// value = base + sum_i lambda_i * terms[i], and when pull_back is set the
/// invalid entries are further mapped g -> g - lambda_m (g - g(reference))
/// with m = terms.size().
struct PenaltyTables {
    std::vector<double> base;
    std::vector<std::vector<double>> terms;
    std::vector<std::uint8_t> valid;
    bool pull_back = false;
    std::optional<Index> reference;

    [[nodiscard]] std::size_t coefficient_count() const { return terms.size() + (pull_back ? 1 : 0); }

    void evaluate(const PenaltyVector &penalty, std::vector<double> &out) const {
        out.resize(base.size());
        const std::size_t m = terms.size();
        double ref_value = 0.0;
        const double pull = pull_back ? penalty.at(m) : 0.0;
        if (pull != 0.0) {
            if (!reference) {
                throw ConfigError("pull-back penalty term needs a reference solution");
            }
            ref_value = base[*reference];
            for (std::size_t i = 0; i < m; ++i) {
                ref_value += penalty.at(i) * terms[i][*reference];
            }
        }
        parallel_blocks(base.size(), [&](std::size_t b, std::size_t e) {
            for (auto x = b; x < e; ++x) {
                double g = base[x];
                for (std::size_t i = 0; i < m; ++i) {
                    g += penalty.at(i) * terms[i][x];
                }
                if (pull != 0.0 && !valid[x]) {
                    g -= pull * (g - ref_value);
                }
                out[x] = g;
            }
        });
    }
};

/// Component tables for MIS (two terms) or CFLP (two terms plus pull-back).
inline PenaltyTables tabulate_penalties(const ProblemInstance &problem,
                                        const std::optional<Solution> &reference = std::nullopt) {
    validate(problem);
    const auto space = space_of(problem);
    if (space.size() > kExactLimit) {
        throw UnsupportedError("penalty tabulation limited to N <= 2^22");
    }
    const auto size = static_cast<std::size_t>(space.size());
    PenaltyTables tables;
    tables.base.resize(size);
    tables.terms.assign(2, std::vector<double>(size));
    tables.valid.resize(size);
    auto fill = [&](auto &&per_solution) {
        parallel_blocks(size, [&](std::size_t b, std::size_t e) {
            Solution x(static_cast<std::size_t>(space.n()));
            for (auto i = b; i < e; ++i) {
                decode_into(space, i, x);
                per_solution(i, x);
            }
        });
    };
    if (const auto *mis = std::get_if<MisInstance>(&problem)) {
        fill([&](std::size_t i, const Solution &x) {
            const int p1 = mis_violations(*mis, x);
            tables.base[i] = std::accumulate(x.begin(), x.end(), 0);
            tables.terms[0][i] = -static_cast<double>(p1);
            tables.terms[1][i] = p1 > 0 ? -1.0 : 0.0;
            tables.valid[i] = p1 == 0;
        });
    } else if (const auto *cflp = std::get_if<CflpInstance>(&problem)) {
        const CflpModel model(*cflp);
        fill([&](std::size_t i, const Solution &x) {
            tables.base[i] = model.cost(x);
            const auto load = model.loads(x);
            double t1 = 0.0;
            double t2 = 0.0;
            bool over = false;
            for (int f = 0; f < cflp->k; ++f) {
                const std::int64_t excess = load[f] - cflp->C[f];
                if (excess > 0) {
                    over = true;
                    t1 += model.mean_transport() * static_cast<double>(excess);
                    t2 += model.mean_opening() *
                          static_cast<double>((excess + cflp->C[f] - 1) / cflp->C[f]);
                }
            }
            tables.terms[0][i] = t1;
            tables.terms[1][i] = t2;
            tables.valid[i] = !over;
        });
        tables.pull_back = true;
        if (reference) {
            tables.reference = solution_to_index(space, *reference);
        }
    } else {
        throw UnsupportedError(std::string("problem ") + kind_name(problem) +
                               " has no penalty terms");
    }
    return tables;
}

// ---------------------------------------------------------------------------
// k-means cluster-count means
// ---------------------------------------------------------------------------

struct ClusterMeans {
    std::vector<double> means;           // means[j-1] = mu_j
    std::vector<std::uint64_t> counts;   // solutions (or samples) per bucket
    std::vector<double> standard_errors; // zero for exact buckets
    bool partial = false;                // some bucket had no data
    StatsMethod method = StatsMethod::Exact;
};

struct ClusterMeansOptions {
    StatsMethod method = StatsMethod::Exact;
    std::uint64_t per_bucket = 10000;
    std::uint64_t max_attempts_per_bucket = 10000000;
    std::uint64_t seed = 0;
};

/// Mean objective of solutions grouped by their number of non-empty clusters.
inline ClusterMeans estimate_cluster_means(const KMeansInstance &inst,
                                           const ClusterMeansOptions &opts = {}) {
    const KMeansKernel kernel(inst);
    const auto space = SolutionSpace::integer(inst.n, inst.k);
    ClusterMeans out;
    out.method = opts.method;
    out.means.assign(static_cast<std::size_t>(inst.k), 0.0);
    out.counts.assign(static_cast<std::size_t>(inst.k), 0);
    out.standard_errors.assign(static_cast<std::size_t>(inst.k), 0.0);

    if (opts.method == StatsMethod::Exact) {
        if (space.size() > kExactLimit) {
            throw UnsupportedError("exact cluster means limited to N <= 2^22");
        }
        std::vector<double> sums(static_cast<std::size_t>(inst.k), 0.0);
        Solution x(static_cast<std::size_t>(inst.n));
        for (Index i = 0; i < space.size(); ++i) {
            decode_into(space, i, x);
            const int c = cluster_count(x);
            sums[c - 1] += kernel(x);
            ++out.counts[c - 1];
        }
        for (int j = 0; j < inst.k; ++j) {
            if (out.counts[j] > 0) {
                out.means[j] = sums[j] / static_cast<double>(out.counts[j]);
            } else {
                out.partial = true;
            }
        }
        return out;
    }

    // Stratified: a uniform j-subset of labels, then a uniform surjection onto
    // it by rejection.
    std::mt19937_64 rng(opts.seed);
    Solution x(static_cast<std::size_t>(inst.n));
    for (int j = 1; j <= inst.k; ++j) {
        double mean = 0.0;
        double m2 = 0.0;
        std::uint64_t accepted = 0;
        std::vector<int> labels(static_cast<std::size_t>(inst.k));
        std::iota(labels.begin(), labels.end(), 0);
        std::uniform_int_distribution<int> slot(0, j - 1);
        for (std::uint64_t attempt = 0;
             attempt < opts.max_attempts_per_bucket && accepted < opts.per_bucket; ++attempt) {
            std::shuffle(labels.begin(), labels.end(), rng);
            for (auto &v : x) {
                v = labels[slot(rng)];
            }
            if (cluster_count(x) != j) {
                continue;
            }
            ++accepted;
            const double v = kernel(x);
            const double delta = v - mean;
            mean += delta / static_cast<double>(accepted);
            m2 += delta * (v - mean);
        }
        out.counts[j - 1] = accepted;
        if (accepted == 0) {
            out.partial = true;
            continue;
        }
        out.means[j - 1] = mean;
        if (accepted > 1) {
            const double var = m2 / static_cast<double>(accepted - 1);
            out.standard_errors[j - 1] = std::sqrt(var / static_cast<double>(accepted));
        }
        if (accepted < opts.per_bucket) {
            out.partial = true;
        }
    }
    return out;
}

/// Objective kernel with the cluster-count mean alignment applied.
inline ObjectiveKernel make_transformed_kmeans_kernel(const KMeansInstance &inst,
                                                      std::vector<double> cluster_means) {
    if (static_cast<int>(cluster_means.size()) != inst.k) {
        throw ValidationError("cluster means must have k entries");
    }
    return [kernel = KMeansKernel(inst), means = std::move(cluster_means),
            k = inst.k](std::span<const int> x) {
        const int c = cluster_count(x);
        return kernel(x) - (means[c - 1] - means[k - 1]);
    };
}

} // namespace qwoa
