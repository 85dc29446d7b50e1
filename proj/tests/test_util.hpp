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
// Shared helpers for the unit tests.
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "qwoa.hpp"

namespace qwoa::testing {

/// Upper 0.1% point of the chi-square distribution (Wilson-Hilferty).
inline double chi2_critical(int dof) {
    const double k = dof;
    const double z = 3.090232;
    const double a = 2.0 / (9.0 * k);
    return k * std::pow(1.0 - a + z * std::sqrt(a), 3);
}

inline double chi2_uniform(const std::map<Index, long> &counts, long categories, long draws) {
    const double expected = static_cast<double>(draws) / categories;
    double chi2 = 0.0;
    long seen = 0;
    for (const auto &[key, c] : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
        ++seen;
    }
    chi2 += static_cast<double>(categories - seen) * expected;
    return chi2;
}

inline Statevector random_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Statevector psi(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        psi[i] = {g(rng), g(rng)};
        norm += std::norm(psi[i]);
    }
    psi.scale(1.0 / std::sqrt(norm));
    return psi;
}

/// Breadth-first distances from `from` on the move graph of the space,
/// with moves generated directly from the variable encoding.
inline std::vector<int> bfs_distances(const SolutionSpace &space, Index from) {
    std::vector<int> dist(space.size(), -1);
    std::vector<Index> queue{from};
    dist[from] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto x = index_to_solution(space, queue[head]);
        std::vector<Solution> moves;
        if (space.kind() == SpaceKind::Permutation) {
            for (int i = 0; i < space.n(); ++i) {
                for (int j = i + 1; j < space.n(); ++j) {
                    auto y = x;
                    std::swap(y[i], y[j]);
                    moves.push_back(y);
                }
            }
        } else {
            for (int i = 0; i < space.n(); ++i) {
                for (int v = 0; v < space.radix(); ++v) {
                    if (v != x[i]) {
                        auto y = x;
                        y[i] = v;
                        moves.push_back(y);
                    }
                }
            }
        }
        for (const auto &y : moves) {
            const Index j = solution_to_index(space, y);
            if (dist[j] < 0) {
                dist[j] = dist[queue[head]] + 1;
                queue.push_back(j);
            }
        }
    }
    return dist;
}

inline MaxcutInstance random_maxcut(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> w(0.1, 1.0);
    std::bernoulli_distribution keep(0.6);
    MaxcutInstance inst{n, {}};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (keep(rng)) {
                inst.edges.push_back({i, j, w(rng)});
            }
        }
    }
    return inst;
}

} // namespace qwoa::testing
