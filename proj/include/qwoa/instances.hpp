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
 * @file instances.hpp
 * Builtin problem instances, seeded generators and exhaustive optima.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "problems.hpp"
#include "solution_space.hpp"

namespace qwoa {

namespace detail {

inline SquareMatrix square_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    SquareMatrix m(static_cast<int>(rows.size()));
    int r = 0;
    for (const auto &row : rows) {
        int c = 0;
        for (double v : row) {
            m(r, c++) = v;
        }
        ++r;
    }
    return m;
}

inline MaxcutInstance builtin_maxcut_n18() {
    MaxcutInstance inst;
    inst.n = 18;
    inst.edges = {
        {0, 1, 0.989287},
        {0, 2, 0.032138},
        {0, 3, 0.351590},
        {0, 6, 0.036441},
        {0, 7, 0.584669},
        {0, 9, 0.731521},
        {0, 11, 0.141659},
        {0, 12, 0.371674},
        {0, 14, 0.387308},
        {0, 16, 0.360192},
        {1, 2, 0.690304},
        {1, 3, 0.974171},
        {1, 5, 0.909797},
        {1, 6, 0.424171},
        {1, 8, 0.580351},
        {1, 14, 0.121489},
        {1, 16, 0.205978},
        {1, 17, 0.086657},
        {2, 3, 0.017430},
        {2, 7, 0.790093},
        {2, 8, 0.839485},
        {2, 9, 0.296687},
        {2, 11, 0.379847},
        {2, 12, 0.338815},
        {2, 13, 0.285064},
        {2, 15, 0.130135},
        {3, 10, 0.009759},
        {3, 12, 0.963173},
        {3, 13, 0.099826},
        {3, 15, 0.714542},
        {4, 6, 0.985471},
        {4, 8, 0.808318},
        {4, 9, 0.685892},
        {4, 12, 0.173569},
        {4, 17, 0.571766},
        {5, 6, 0.242078},
        {5, 7, 0.183907},
        {5, 11, 0.137946},
        {5, 12, 0.757602},
        {5, 14, 0.385144},
        {5, 15, 0.519802},
        {5, 16, 0.693374},
        {6, 7, 0.670602},
        {6, 9, 0.696379},
        {6, 10, 0.111345},
        {6, 12, 0.514704},
        {6, 14, 0.854230},
        {7, 8, 0.599075},
        {7, 9, 0.825837},
        {7, 10, 0.617606},
        {7, 13, 0.605946},
        {7, 16, 0.983943},
        {7, 17, 0.085275},
        {8, 11, 0.349141},
        {8, 13, 0.268013},
        {8, 16, 0.142334},
        {8, 17, 0.731623},
        {9, 13, 0.808777},
        {9, 14, 0.205945},
        {9, 16, 0.554085},
        {9, 17, 0.304275},
        {10, 11, 0.974365},
        {10, 13, 0.393311},
        {10, 16, 0.274597},
        {11, 12, 0.586437},
        {11, 13, 0.928648},
        {11, 17, 0.512909},
        {12, 13, 0.795810},
        {12, 14, 0.581403},
        {12, 16, 0.041086},
        {12, 17, 0.759730},
        {13, 14, 0.336961},
        {13, 15, 0.198718},
        {13, 17, 0.191082},
        {14, 15, 0.186035},
        {14, 17, 0.761156},
    };
    return inst;
}

inline KMeansInstance builtin_kmeans_n12k3() {
    KMeansInstance inst;
    inst.n = 12;
    inst.k = 3;
    inst.points = {
        {9.11002, 0.06106, 4.82484, 6.19904, 1.73007, 9.69564, 3.27416, 9.04641, 8.89987, 3.90831},
        {0.67598, 2.91592, 3.81196, 3.54562, 4.70264, 0.45163, 6.26537, 2.48306, 7.78254, 8.71130},
        {8.94023, 7.73040, 0.47080, 4.68225, 9.95584, 9.96049, 5.93501, 7.75738, 8.67906, 1.48174},
        {4.25387, 5.45516, 7.78103, 6.79578, 5.39876, 9.90842, 0.81172, 9.65141, 1.23032, 7.56302},
        {2.55319, 5.53473, 8.11386, 5.84780, 3.16515, 5.31585, 8.12552, 3.41561, 1.60965, 5.27394},
        {3.24497, 2.64679, 2.25402, 9.37613, 3.91658, 4.33125, 2.92193, 2.21017, 1.68782, 6.17135},
        {5.31082, 5.54856, 1.87199, 9.74049, 1.62758, 9.21121, 0.60003, 6.19258, 0.56318, 4.51460},
        {6.63098, 5.86293, 6.14683, 6.41343, 9.15442, 5.80235, 9.20749, 2.70775, 3.74269, 2.54521},
        {7.10254, 4.16486, 0.13647, 3.91372, 8.46266, 6.47524, 1.74747, 8.57903, 0.35589, 9.84442},
        {4.41710, 8.58625, 2.09502, 9.78096, 4.32488, 2.70198, 4.54662, 6.53021, 2.63868, 7.14099},
        {6.86481, 2.01457, 9.41148, 3.74956, 0.87813, 0.85384, 0.43303, 0.94263, 6.65593, 2.07344},
        {3.84940, 8.90650, 8.47315, 8.64937, 8.17979, 7.40941, 3.91822, 0.52376, 8.66642, 2.44087},
    };
    return inst;
}

inline QapInstance builtin_qap_n9() {
    QapInstance inst;
    inst.n = 9;
    inst.L = square_matrix({
        {0.0000, 24.6975, 14.4967, 29.5593, 4.9043, 21.5563, 9.4326, 4.6191, 14.7543},
        {24.6975, 0.0000, 24.4557, 7.9174, 25.9272, 9.2966, 16.1992, 20.3657, 22.6338},
        {14.4967, 24.4557, 0.0000, 31.8189, 19.3559, 16.5448, 11.3483, 12.3271, 27.1493},
        {29.5593, 7.9174, 31.8189, 0.0000, 29.6063, 17.2137, 22.3389, 25.7415, 23.3119},
        {4.9043, 25.9272, 19.3559, 29.6063, 0.0000, 24.4421, 12.5951, 8.1405, 11.0807},
        {21.5563, 9.2966, 16.5448, 17.2137, 24.4421, 0.0000, 12.1287, 16.9481, 25.3065},
        {9.4326, 16.1992, 11.3483, 22.3389, 12.5951, 12.1287, 0.0000, 4.8195, 16.7791},
        {4.6191, 20.3657, 12.3271, 25.7415, 8.1405, 16.9481, 4.8195, 0.0000, 14.8919},
        {14.7543, 22.6338, 27.1493, 23.3119, 11.0807, 25.3065, 16.7791, 14.8919, 0.0000},
    });
    inst.F = square_matrix({
        {0.0000, 12.8188, 8.0291, 18.0712, 10.7207, 15.8060, 13.1888, 6.9539, 16.4688},
        {11.7805, 0.0000, 16.1912, 1.0064, 17.8705, 17.2467, 15.0627, 3.9854, 12.8095},
        {1.9235, 19.5465, 0.0000, 19.1171, 14.0134, 8.8951, 13.4869, 2.9430, 1.1696},
        {14.6809, 19.2269, 2.8263, 0.0000, 10.8089, 10.9314, 18.6236, 15.2934, 9.2809},
        {10.0583, 7.0718, 6.5861, 14.6330, 0.0000, 0.3073, 19.4842, 18.7635, 14.8562},
        {16.6853, 7.4937, 17.3569, 18.0753, 1.2478, 0.0000, 12.4494, 18.8339, 16.2280},
        {16.5752, 18.0927, 5.1124, 12.1212, 18.4499, 13.6680, 0.0000, 16.0441, 18.8221},
        {19.4013, 6.7816, 14.9683, 14.6019, 12.8320, 17.1668, 10.4133, 0.0000, 3.0366},
        {12.1731, 4.1699, 15.3266, 13.4975, 18.0310, 6.4509, 11.7254, 15.0682, 0.0000},
    });
    return inst;
}

inline MisInstance builtin_mis_n18() {
    MisInstance inst;
    inst.n = 18;
    inst.edges = {
        {0, 5}, {0, 6}, {0, 9}, {0, 12}, {0, 13}, {0, 16}, {1, 16}, {2, 3},
        {2, 6}, {2, 8}, {2, 17}, {3, 13}, {3, 15}, {4, 15}, {4, 16}, {5, 7},
        {5, 10}, {5, 13}, {5, 15}, {6, 8}, {6, 14}, {6, 17}, {7, 11}, {7, 14},
        {10, 16}, {11, 13}, {12, 16}, {13, 14}, {8, 10}, {8, 11}, {8, 12}, {9, 16},
    };
    return inst;
}

inline CflpInstance builtin_cflp_n12k3() {
    CflpInstance inst;
    inst.n = 12;
    inst.k = 3;
    inst.R = {232, 520, 465, 765, 229, 277, 540, 324, 395, 428, 351, 381};
    inst.C = {2290, 2290, 2290};
    inst.L = {
        {5.543245, 5.136929, 2.058055},
        {6.554159, 4.043134, 2.592268},
        {4.080965, 5.984916, 2.230841},
        {4.902397, 2.951256, 1.101055},
        {2.764263, 3.540181, 2.813068},
        {2.811617, 3.723713, 1.438820},
        {5.324539, 0.921780, 2.967657},
        {0.960419, 5.269752, 3.258399},
        {1.174163, 5.126471, 3.397050},
        {7.160522, 6.516486, 3.817291},
        {1.877464, 4.615311, 2.133359},
        {6.705062, 1.438378, 4.953987},
    };
    inst.F = {1070.126610, 1746.937054, 1014.019952};
    return inst;
}

} // namespace detail

inline std::vector<std::string> builtin_names() {
    return {"maxcut-n18", "kmeans-n12k3", "qap-n9", "mis-n18", "cflp-n12k3"};
}

inline ProblemInstance load_builtin(std::string_view name) {
    if (name == "maxcut-n18") {
        return detail::builtin_maxcut_n18();
    }
    if (name == "kmeans-n12k3") {
        return detail::builtin_kmeans_n12k3();
    }
    if (name == "qap-n9") {
        return detail::builtin_qap_n9();
    }
    if (name == "mis-n18") {
        return detail::builtin_mis_n18();
    }
    if (name == "cflp-n12k3") {
        return detail::builtin_cflp_n12k3();
    }
    std::string known;
    for (const auto &n : builtin_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw LookupError("unknown builtin instance '" + std::string(name) + "'; available: " + known);
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

struct GenerateParams {
    int n = 0;
    int k = 0;
    double edge_probability = -1.0; // negative: use the recipe default
    int dimension = 10;             // k-means point dimension
    std::int64_t capacity = 2290;   // CFLP capacity per facility
};

namespace detail {

/// Uniform on (lo, hi].
template <class Rng> double uniform_left_open(Rng &rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return hi - (hi - lo) * u(rng);
}

inline bool connected(int n, const std::vector<std::pair<int, int>> &edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

inline double euclid(double ax, double ay, double bx, double by) {
    return std::hypot(ax - bx, ay - by);
}

} // namespace detail

/// Random instance following the appendix recipes.
inline ProblemInstance generate(std::string_view kind, const GenerateParams &gp, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = gp.n;
    if (kind == "maxcut") {
        const double p = gp.edge_probability < 0 ? 0.5 : gp.edge_probability;
        MaxcutInstance inst;
        inst.n = n;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (unit(rng) < p) {
                    inst.edges.push_back({i, j, detail::uniform_left_open(rng, 0.0, 1.0)});
                }
            }
        }
        validate(inst);
        return inst;
    }
    if (kind == "kmeans") {
        KMeansInstance inst;
        inst.n = n;
        inst.k = gp.k;
        inst.points.assign(static_cast<std::size_t>(n), std::vector<double>(gp.dimension));
        for (auto &pt : inst.points) {
            for (auto &v : pt) {
                v = detail::uniform_left_open(rng, 0.0, 10.0);
            }
        }
        validate(inst);
        return inst;
    }
    if (kind == "qap") {
        QapInstance inst;
        inst.n = n;
        std::vector<std::pair<double, double>> loc(static_cast<std::size_t>(n));
        for (auto &[x, y] : loc) {
            x = 30.0 * unit(rng);
            y = 30.0 * unit(rng);
        }
        inst.L = SquareMatrix(n);
        inst.F = SquareMatrix(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                inst.L(i, j) = detail::euclid(loc[i].first, loc[i].second, loc[j].first, loc[j].second);
                inst.F(i, j) = i == j ? 0.0 : 20.0 * unit(rng);
            }
        }
        validate(inst);
        return inst;
    }
    if (kind == "mis") {
        const double p = gp.edge_probability < 0 ? 0.2 : gp.edge_probability;
        MisInstance inst;
        inst.n = n;
        do {
            inst.edges.clear();
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (unit(rng) < p) {
                        inst.edges.emplace_back(i, j);
                    }
                }
            }
        } while (!detail::connected(n, inst.edges));
        validate(inst);
        return inst;
    }
    if (kind == "cflp") {
        CflpInstance inst;
        inst.n = n;
        inst.k = gp.k;
        std::uniform_int_distribution<std::int64_t> demand(200, 799);
        for (int j = 0; j < n; ++j) {
            inst.R.push_back(demand(rng));
        }
        inst.C.assign(static_cast<std::size_t>(gp.k), gp.capacity);
        std::vector<std::pair<double, double>> fac(static_cast<std::size_t>(gp.k));
        for (auto &[x, y] : fac) {
            x = 8.0 * unit(rng);
            y = 8.0 * unit(rng);
        }
        inst.L.assign(static_cast<std::size_t>(n), std::vector<double>(gp.k));
        for (int j = 0; j < n; ++j) {
            const double cx = 8.0 * unit(rng);
            const double cy = 8.0 * unit(rng);
            for (int i = 0; i < gp.k; ++i) {
                inst.L[j][i] = detail::euclid(cx, cy, fac[i].first, fac[i].second);
            }
        }
        for (int i = 0; i < gp.k; ++i) {
            inst.F.push_back(1000.0 + 1000.0 * unit(rng));
        }
        validate(inst);
        return inst;
    }
    throw LookupError("unknown problem kind '" + std::string(kind) + "'");
}

// ---------------------------------------------------------------------------
// Exhaustive optimum
// ---------------------------------------------------------------------------

struct BruteForceResult {
    double value = 0.0;
    std::vector<Index> solutions; // every optimum, ascending
};

/// Best value of a tabulated objective and every index attaining it.
inline BruteForceResult brute_force_optimum(std::span<const double> values, Sense sense) {
    if (values.empty()) {
        throw ValidationError("empty objective table");
    }
    BruteForceResult res;
    res.value = values[0];
    for (double v : values) {
        if (better(sense, v, res.value)) {
            res.value = v;
        }
    }
    const double tol = 1e-12 * (1.0 + std::abs(res.value));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::abs(values[i] - res.value) <= tol) {
            res.solutions.push_back(i);
        }
    }
    return res;
}

inline BruteForceResult brute_force_optimum(const SolutionSpace &space, const ObjectiveKernel &f,
                                            Sense sense) {
    if (space.size() > kExactLimit) {
        throw UnsupportedError("exhaustive search limited to N <= 2^22");
    }
    return brute_force_optimum(tabulate(space, f), sense);
}

inline BruteForceResult brute_force_optimum(const ProblemInstance &problem,
                                            const PenaltyVector &penalty = {}) {
    return brute_force_optimum(space_of(problem), make_kernel(problem, penalty), sense_of(problem));
}

/// Lowest-index minimiser of the unpenalised CFLP cost.
inline Solution cflp_reference_solution(const CflpInstance &inst) {
    const auto space = SolutionSpace::integer(inst.n, inst.k);
    const CflpModel model(inst);
    const auto best = brute_force_optimum(
        space, [&](std::span<const int> x) { return model.cost(x); }, Sense::Minimize);
    return index_to_solution(space, best.solutions.front());
}

} // namespace qwoa
