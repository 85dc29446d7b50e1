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
 * @file solution_space.hpp
 * Feasible-solution structures (binary strings, integer vectors and
 * permutations), their dense index codecs, move-graph distances and the
 * combinatorics of distance-h subsets.
 *
 * Binary and integer solutions use a positional base-k code with vars[0]
 * least significant. Permutations are ranked lexicographically through their
 * Lehmer code, so std::next_permutation enumerates them in index order.
 */
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace qwoa {

enum class SpaceKind { Binary, Integer, Permutation };

using Index = std::uint64_t;
using Solution = std::vector<int>;

inline const char *to_string(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::Binary:
        return "binary";
    case SpaceKind::Integer:
        return "integer";
    case SpaceKind::Permutation:
        return "permutation";
    }
    return "?";
}

struct DistanceProfile {
    int degree;
    int diameter;
    double phi_period; // largest walk time keeping distance phases admissible
};

class SolutionSpace {
  public:
    static SolutionSpace binary(int n) { return SolutionSpace(SpaceKind::Binary, n, 2); }

    static SolutionSpace integer(int n, int k) {
        if (k < 2) {
            throw ValidationError("integer space needs k >= 2");
        }
        return SolutionSpace(SpaceKind::Integer, n, k);
    }

    static SolutionSpace permutation(int n) {
        return SolutionSpace(SpaceKind::Permutation, n, n);
    }

    [[nodiscard]] SpaceKind kind() const { return kind_; }
    [[nodiscard]] int n() const { return n_; }
    /// Number of values a single variable may take.
    [[nodiscard]] int radix() const { return k_; }
    [[nodiscard]] Index size() const { return size_; }

    [[nodiscard]] DistanceProfile profile() const {
        switch (kind_) {
        case SpaceKind::Binary:
            return {n_, n_, std::numbers::pi / 2};
        case SpaceKind::Integer:
            return {n_ * (k_ - 1), n_, std::numbers::pi / k_};
        case SpaceKind::Permutation:
            return {n_ * (n_ - 1) / 2, n_ - 1, 2.0 / n_};
        }
        return {};
    }

    [[nodiscard]] int degree() const { return profile().degree; }
    [[nodiscard]] int diameter() const { return profile().diameter; }

    bool operator==(const SolutionSpace &) const = default;

  private:
    SolutionSpace(SpaceKind kind, int n, int k) : kind_(kind), n_(n), k_(k) {
        if (n < 1) {
            throw ValidationError("solution space needs n >= 1");
        }
        if (kind == SpaceKind::Permutation) {
            if (n > 20) {
                throw RangeError("permutation spaces limited to n <= 20");
            }
            size_ = 1;
            for (int i = 2; i <= n; ++i) {
                size_ *= static_cast<Index>(i);
            }
        } else {
            size_ = 1;
            for (int i = 0; i < n; ++i) {
                if (size_ > UINT64_MAX / static_cast<Index>(k)) {
                    throw RangeError("solution space cardinality overflows 64 bits");
                }
                size_ *= static_cast<Index>(k);
            }
        }
    }

    SpaceKind kind_;
    int n_;
    int k_;
    Index size_ = 0;
};

inline std::string describe(const SolutionSpace &s) {
    std::string out = to_string(s.kind());
    out += "(n=" + std::to_string(s.n());
    if (s.kind() == SpaceKind::Integer) {
        out += ",k=" + std::to_string(s.radix());
    }
    return out + ")";
}

inline void validate(const SolutionSpace &space, std::span<const int> sol) {
    if (static_cast<int>(sol.size()) != space.n()) {
        throw ValidationError("solution length " + std::to_string(sol.size()) +
                              " does not match " + describe(space));
    }
    std::uint32_t seen = 0;
    for (int v : sol) {
        if (v < 0 || v >= space.radix()) {
            throw ValidationError("variable value " + std::to_string(v) + " outside [0, " +
                                  std::to_string(space.radix()) + ")");
        }
        if (space.kind() == SpaceKind::Permutation) {
            const std::uint32_t bit = 1U << v;
            if ((seen & bit) != 0U) {
                throw ValidationError("repeated entry in permutation");
            }
            seen |= bit;
        }
    }
}

namespace detail {

inline Index factorial(int n) {
    Index f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= static_cast<Index>(i);
    }
    return f;
}

/// Position of the r-th (0-based) set bit of mask.
inline int select_bit(std::uint32_t mask, int r) {
    for (; r > 0; --r) {
        mask &= mask - 1;
    }
    return std::countr_zero(mask);
}

} // namespace detail

/// Writes the solution with index idx into out (size n). No validation.
inline void decode_into(const SolutionSpace &space, Index idx, std::span<int> out) {
    const int n = space.n();
    if (space.kind() == SpaceKind::Permutation) {
        std::uint32_t remaining = (1U << n) - 1U;
        Index radix = detail::factorial(n - 1);
        for (int i = 0; i < n; ++i) {
            const Index digit = idx / radix;
            idx %= radix;
            const int value = detail::select_bit(remaining, static_cast<int>(digit));
            out[i] = value;
            remaining &= ~(1U << value);
            if (i + 1 < n) {
                radix /= static_cast<Index>(n - 1 - i);
            }
        }
        return;
    }
    const auto k = static_cast<Index>(space.radix());
    for (int i = 0; i < n; ++i) {
        out[i] = static_cast<int>(idx % k);
        idx /= k;
    }
}

/// Index of a solution known to be valid.
inline Index encode(const SolutionSpace &space, std::span<const int> sol) {
    const int n = space.n();
    Index idx = 0;
    if (space.kind() == SpaceKind::Permutation) {
        std::uint32_t remaining = (1U << n) - 1U;
        for (int i = 0; i < n; ++i) {
            const std::uint32_t bit = 1U << sol[i];
            const auto rank = std::popcount(remaining & (bit - 1U));
            remaining &= ~bit;
            idx = idx * static_cast<Index>(n - i) + static_cast<Index>(rank);
        }
        return idx;
    }
    const auto k = static_cast<Index>(space.radix());
    for (int i = n - 1; i >= 0; --i) {
        idx = idx * k + static_cast<Index>(sol[i]);
    }
    return idx;
}

inline Solution index_to_solution(const SolutionSpace &space, Index idx) {
    if (idx >= space.size()) {
        throw RangeError("index " + std::to_string(idx) + " outside " + describe(space));
    }
    Solution sol(static_cast<std::size_t>(space.n()));
    decode_into(space, idx, sol);
    return sol;
}

inline Index solution_to_index(const SolutionSpace &space, std::span<const int> sol) {
    validate(space, sol);
    return encode(space, sol);
}

/// Number of cycles of the permutation w = v o u^-1.
inline int relative_cycle_count(std::span<const int> u, std::span<const int> v) {
    const auto n = u.size();
    std::array<int, 32> w{};
    for (std::size_t i = 0; i < n; ++i) {
        w[static_cast<std::size_t>(u[i])] = v[i];
    }
    std::uint32_t visited = 0;
    int cycles = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if ((visited >> s) & 1U) {
            continue;
        }
        ++cycles;
        for (auto j = s; ((visited >> j) & 1U) == 0U; j = static_cast<std::size_t>(w[j])) {
            visited |= 1U << j;
        }
    }
    return cycles;
}

/// Move-graph distance: Hamming distance for binary/integer spaces, minimum
/// number of transpositions for permutations.
inline int distance(const SolutionSpace &space, std::span<const int> u, std::span<const int> v) {
    validate(space, u);
    validate(space, v);
    if (space.kind() == SpaceKind::Permutation) {
        return space.n() - relative_cycle_count(u, v);
    }
    int h = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        h += (u[i] != v[i]) ? 1 : 0;
    }
    return h;
}

/// Unsigned Stirling number of the first kind c(n, cycles).
inline Index stirling_first(int n, int cycles) {
    if (n < 0 || cycles < 0 || cycles > n) {
        return 0;
    }
    std::vector<Index> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int m = 1; m <= n; ++m) {
        for (int c = m; c >= 1; --c) {
            row[c] = row[c - 1] + static_cast<Index>(m - 1) * row[c];
        }
        row[0] = 0;
    }
    return row[static_cast<std::size_t>(cycles)];
}

inline Index binomial(int n, int r) {
    if (r < 0 || r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    Index out = 1;
    for (int i = 1; i <= r; ++i) {
        out = out * static_cast<Index>(n - r + i) / static_cast<Index>(i);
    }
    return out;
}

/// |h_u|, identical for every u by vertex transitivity.
inline Index subset_size(const SolutionSpace &space, int h) {
    if (h < 0 || h > space.diameter()) {
        throw RangeError("distance " + std::to_string(h) + " outside [0, " +
                         std::to_string(space.diameter()) + "]");
    }
    switch (space.kind()) {
    case SpaceKind::Binary:
        return binomial(space.n(), h);
    case SpaceKind::Integer: {
        Index out = binomial(space.n(), h);
        for (int i = 0; i < h; ++i) {
            out *= static_cast<Index>(space.radix() - 1);
        }
        return out;
    }
    case SpaceKind::Permutation:
        return stirling_first(space.n(), space.n() - h);
    }
    return 0;
}

namespace detail {

/// Table c(j, r) for j, r <= m, cached per thread.
inline const std::vector<std::vector<Index>> &stirling_table(int m) {
    thread_local std::vector<std::vector<std::vector<Index>>> cache(21);
    auto &table = cache.at(static_cast<std::size_t>(m));
    if (table.empty()) {
        table.assign(static_cast<std::size_t>(m) + 1, std::vector<Index>(static_cast<std::size_t>(m) + 1, 0));
        table[0][0] = 1;
        for (int j = 1; j <= m; ++j) {
            for (int r = 1; r <= j; ++r) {
                table[j][r] = table[j - 1][r - 1] + static_cast<Index>(j - 1) * table[j - 1][r];
            }
        }
    }
    return table;
}

/// Uniform permutation of {0..m-1} with exactly `cycles` cycles, built by the
/// recursion c(j, r) = c(j-1, r-1) + (j-1) c(j-1, r).
template <class Rng> std::vector<int> sample_cycle_count(int m, int cycles, Rng &rng) {
    const auto &table = stirling_table(m);
    std::vector<bool> opens_cycle(static_cast<std::size_t>(m));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int r = cycles;
    for (int j = m; j >= 1; --j) {
        const double p_new =
            r >= 1 ? static_cast<double>(table[j - 1][r - 1]) / static_cast<double>(table[j][r])
                   : 0.0;
        const bool fresh = unit(rng) < p_new;
        opens_cycle[j - 1] = fresh;
        if (fresh) {
            --r;
        }
    }
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
        if (opens_cycle[e]) {
            perm[e] = e;
        } else {
            std::uniform_int_distribution<int> pick(0, e - 1);
            const int a = pick(rng);
            perm[e] = perm[a];
            perm[a] = e;
        }
    }
    return perm;
}

} // namespace detail

/// Uniform draw from h_u.
template <class Rng>
Solution sample_at_distance(const SolutionSpace &space, std::span<const int> u, int h, Rng &rng) {
    validate(space, u);
    if (h < 0 || h > space.diameter()) {
        throw RangeError("distance " + std::to_string(h) + " outside [0, " +
                         std::to_string(space.diameter()) + "]");
    }
    Solution v(u.begin(), u.end());
    if (h == 0) {
        return v;
    }
    const int n = space.n();
    if (space.kind() == SpaceKind::Permutation) {
        const auto sigma = detail::sample_cycle_count(n, n - h, rng);
        for (int i = 0; i < n; ++i) {
            v[i] = sigma[static_cast<std::size_t>(u[i])];
        }
        return v;
    }
    std::vector<int> positions(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        positions[i] = i;
    }
    const int k = space.radix();
    std::uniform_int_distribution<int> shift(1, k - 1);
    for (int i = 0; i < h; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(positions[i], positions[pick(rng)]);
        const int p = positions[i];
        v[p] = (u[p] + shift(rng)) % k;
    }
    return v;
}

/// Uniform draw from the whole space.
template <class Rng> Index sample_index(const SolutionSpace &space, Rng &rng) {
    std::uniform_int_distribution<Index> pick(0, space.size() - 1);
    return pick(rng);
}

} // namespace qwoa
