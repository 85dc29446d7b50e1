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
#include <gtest/gtest.h>

#include <cmath>
#include <queue>

#include "test_util.hpp"

using namespace qwoa;

namespace {

bool bfs_connected(const MisInstance &inst) {
    std::vector<std::vector<int>> adj(inst.n);
    for (auto [a, b] : inst.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(inst.n, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        ++count;
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                q.push(w);
            }
        }
    }
    return count == inst.n;
}

} // namespace

TEST(Builtins, AllNamesLoad) {
    for (const auto &name : builtin_names()) {
        EXPECT_NO_THROW(load_builtin(name)) << name;
    }
}

TEST(Builtins, UnknownNameListsAvailable) {
    try {
        load_builtin("maxcut-n99");
        FAIL() << "expected LookupError";
    } catch (const LookupError &e) {
        const std::string msg = e.what();
        for (const auto &name : builtin_names()) {
            EXPECT_NE(msg.find(name), std::string::npos) << name;
        }
    }
}

TEST(Builtins, MaxcutEdgeList) {
    const auto inst = std::get<MaxcutInstance>(load_builtin("maxcut-n18"));
    EXPECT_EQ(inst.n, 18);
    EXPECT_EQ(inst.edges.size(), 76u);
    for (const auto &e : inst.edges) {
        EXPECT_GT(e.weight, 0.0);
        EXPECT_LE(e.weight, 1.0);
        EXPECT_LT(e.i, e.j);
    }
}

TEST(Builtins, MisEdgeList) {
    const auto inst = std::get<MisInstance>(load_builtin("mis-n18"));
    EXPECT_EQ(inst.n, 18);
    EXPECT_EQ(inst.edges.size(), 32u);
    EXPECT_TRUE(bfs_connected(inst));
}

TEST(Builtins, CflpCapacities) {
    const auto inst = std::get<CflpInstance>(load_builtin("cflp-n12k3"));
    EXPECT_EQ(inst.n, 12);
    EXPECT_EQ(inst.k, 3);
    EXPECT_EQ(inst.C, (std::vector<std::int64_t>{2290, 2290, 2290}));
    EXPECT_EQ(inst.R.size(), 12u);
    EXPECT_EQ(inst.F.size(), 3u);
}

TEST(Builtins, KMeansAndQapShapes) {
    const auto km = std::get<KMeansInstance>(load_builtin("kmeans-n12k3"));
    EXPECT_EQ(km.n, 12);
    EXPECT_EQ(km.k, 3);
    EXPECT_EQ(km.points.size(), 12u);
    const auto qap = std::get<QapInstance>(load_builtin("qap-n9"));
    EXPECT_EQ(qap.n, 9);
    for (int i = 0; i < 9; ++i) {
        EXPECT_EQ(qap.L(i, i), 0.0);
        for (int j = 0; j < 9; ++j) {
            EXPECT_EQ(qap.L(i, j), qap.L(j, i));
        }
    }
}

TEST(Generate, MaxcutEdgeCountMatchesBinomial) {
    const int n = 18;
    const double pairs = n * (n - 1) / 2.0;
    const int seeds = 1000;
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const auto inst = std::get<MaxcutInstance>(generate("maxcut", {.n = n}, s));
        total += static_cast<double>(inst.edges.size());
        for (const auto &e : inst.edges) {
            ASSERT_GT(e.weight, 0.0);
            ASSERT_LE(e.weight, 1.0);
        }
    }
    const double mean = total / seeds;
    const double se = std::sqrt(pairs * 0.25 / seeds);
    EXPECT_NEAR(mean, 76.5, 3 * se);
}

TEST(Generate, MisIsAlwaysConnected) {
    for (int s = 0; s < 200; ++s) {
        const auto inst = std::get<MisInstance>(generate("mis", {.n = 18}, s));
        ASSERT_TRUE(bfs_connected(inst)) << "seed " << s;
    }
    const auto sparse = std::get<MisInstance>(generate("mis", {.n = 12, .edge_probability = 0.05}, 3));
    EXPECT_TRUE(bfs_connected(sparse));
}

TEST(Generate, KMeansRanges) {
    const auto inst = std::get<KMeansInstance>(generate("kmeans", {.n = 12, .k = 3}, 4));
    for (const auto &p : inst.points) {
        for (double v : p) {
            EXPECT_GT(v, 0.0);
            EXPECT_LE(v, 10.0);
        }
    }
}

TEST(Generate, QapRanges) {
    for (int s = 0; s < 20; ++s) {
        const auto inst = std::get<QapInstance>(generate("qap", {.n = 7}, s));
        for (int i = 0; i < 7; ++i) {
            EXPECT_EQ(inst.L(i, i), 0.0);
            EXPECT_EQ(inst.F(i, i), 0.0);
            for (int j = 0; j < 7; ++j) {
                EXPECT_EQ(inst.L(i, j), inst.L(j, i));
                EXPECT_GE(inst.L(i, j), 0.0);
                EXPECT_LT(inst.L(i, j), 30.0 * std::sqrt(2.0));
                EXPECT_GE(inst.F(i, j), 0.0);
                EXPECT_LT(inst.F(i, j), 20.0);
            }
        }
    }
}

TEST(Generate, CflpRanges) {
    const auto inst = std::get<CflpInstance>(generate("cflp", {.n = 10, .k = 3}, 8));
    EXPECT_EQ(inst.C, (std::vector<std::int64_t>{2290, 2290, 2290}));
    for (auto r : inst.R) {
        EXPECT_GE(r, 200);
        EXPECT_LT(r, 800);
    }
    for (double f : inst.F) {
        EXPECT_GE(f, 1000.0);
        EXPECT_LT(f, 2000.0);
    }
    for (const auto &row : inst.L) {
        for (double d : row) {
            EXPECT_GE(d, 0.0);
            EXPECT_LT(d, 8.0 * std::sqrt(2.0));
        }
    }
}

TEST(Generate, SeedsAreReproducible) {
    const auto a = std::get<MaxcutInstance>(generate("maxcut", {.n = 10}, 42));
    const auto b = std::get<MaxcutInstance>(generate("maxcut", {.n = 10}, 42));
    ASSERT_EQ(a.edges.size(), b.edges.size());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        EXPECT_EQ(a.edges[i].weight, b.edges[i].weight);
    }
    EXPECT_THROW(generate("tsp", {.n = 5}, 0), LookupError);
}

TEST(BruteForce, MaxcutOptimumIsAMirrorPair) {
    const auto problem = load_builtin("maxcut-n18");
    const auto best = brute_force_optimum(problem);
    ASSERT_EQ(best.solutions.size(), 2u);
    EXPECT_EQ(best.solutions[0] ^ best.solutions[1], (Index{1} << 18) - 1);
}

TEST(BruteForce, ComplementInvariance) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto inst = qwoa::testing::random_maxcut(9, seed);
        const auto space = SolutionSpace::binary(9);
        const auto f = tabulate(space, make_kernel(ProblemInstance{inst}));
        std::vector<double> g(f.size());
        for (Index x = 0; x < f.size(); ++x) {
            g[x] = f[x ^ (f.size() - 1)];
        }
        EXPECT_EQ(brute_force_optimum(f, Sense::Maximize).value, brute_force_optimum(g, Sense::Maximize).value);
    }
}

TEST(BruteForce, MisHasTwoMaximumSetsOfNine) {
    const auto problem = load_builtin("mis-n18");
    const PenaltyVector lf{{1.5, 0.0}, {}};
    const auto best = brute_force_optimum(problem, lf);
    EXPECT_DOUBLE_EQ(best.value, 9.0);
    ASSERT_EQ(best.solutions.size(), 2u);
    const auto space = space_of(problem);
    for (auto x : best.solutions) {
        EXPECT_TRUE(is_valid(problem, index_to_solution(space, x)));
    }
}

TEST(BruteForce, MisValidFraction) {
    const auto problem = load_builtin("mis-n18");
    const auto space = space_of(problem);
    Index valid = 0;
    for (Index x = 0; x < space.size(); ++x) {
        valid += is_valid(problem, index_to_solution(space, x)) ? 1 : 0;
    }
    const double pct = 100.0 * static_cast<double>(valid) / static_cast<double>(space.size());
    EXPECT_NEAR(pct, 1.04, 0.01);
}

TEST(BruteForce, TiesAndSense) {
    const std::vector<double> v{3.0, 1.0, 3.0, 2.0, 1.0};
    const auto mx = brute_force_optimum(v, Sense::Maximize);
    EXPECT_EQ(mx.value, 3.0);
    EXPECT_EQ(mx.solutions, (std::vector<Index>{0, 2}));
    const auto mn = brute_force_optimum(v, Sense::Minimize);
    EXPECT_EQ(mn.solutions, (std::vector<Index>{1, 4}));
    EXPECT_THROW(brute_force_optimum(std::vector<double>{}, Sense::Minimize), ValidationError);
    EXPECT_THROW(brute_force_optimum(SolutionSpace::binary(23), [](std::span<const int>) { return 0.0; },
                                     Sense::Maximize),
                 UnsupportedError);
}

TEST(BruteForce, CflpReferenceIsACostMinimiser) {
    const auto inst = std::get<CflpInstance>(load_builtin("cflp-n12k3"));
    const auto ref = cflp_reference_solution(inst);
    const CflpModel model(inst);
    const auto space = SolutionSpace::integer(inst.n, inst.k);
    const double c = model.cost(ref);
    for (Index x = 0; x < space.size(); x += 37) {
        ASSERT_GE(model.cost(index_to_solution(space, x)), c);
    }
}
