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

#include <algorithm>
#include <numeric>
#include <random>

#include "test_util.hpp"

using namespace qwoa;

namespace {

const MaxcutInstance &builtin_maxcut() {
    static const auto inst = std::get<MaxcutInstance>(load_builtin("maxcut-n18"));
    return inst;
}

// k-means objective from centroids: 2 * sum over clusters of the squared
// distances to the centroid, which equals the ordered-pair form divided by
// the cluster size.
double centroid_form(const KMeansInstance &inst, const Solution &x) {
    double total = 0.0;
    for (int c = 0; c < inst.k; ++c) {
        std::vector<double> centroid(inst.points[0].size(), 0.0);
        int size = 0;
        for (int j = 0; j < inst.n; ++j) {
            if (x[j] == c) {
                for (std::size_t d = 0; d < centroid.size(); ++d) {
                    centroid[d] += inst.points[j][d];
                }
                ++size;
            }
        }
        if (size == 0) {
            continue;
        }
        for (auto &v : centroid) {
            v /= size;
        }
        for (int j = 0; j < inst.n; ++j) {
            if (x[j] == c) {
                total += 2.0 * squared_distance(inst.points[j], centroid);
            }
        }
    }
    return total;
}

KMeansInstance small_kmeans(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    KMeansInstance inst{n, k, {}};
    for (int i = 0; i < n; ++i) {
        inst.points.push_back({u(rng), u(rng), u(rng)});
    }
    return inst;
}

} // namespace

// --- maxcut -----------------------------------------------------------------

TEST(Maxcut, EmptyCutIsZero) {
    EXPECT_EQ(maxcut_objective(builtin_maxcut(), Solution(18, 0)), 0.0);
}

TEST(Maxcut, HandComputedTriangle) {
    MaxcutInstance tri{3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 4.0}}};
    EXPECT_DOUBLE_EQ(maxcut_objective(tri, Solution{1, 0, 0}), 5.0);
    EXPECT_DOUBLE_EQ(maxcut_objective(tri, Solution{0, 1, 0}), 3.0);
}

TEST(Maxcut, MirrorSymmetryExhaustive) {
    const auto &inst = builtin_maxcut();
    const auto space = SolutionSpace::binary(18);
    const auto values = tabulate(space, make_kernel(inst));
    const Index mask = space.size() - 1;
    for (Index i = 0; i < space.size(); ++i) {
        ASSERT_EQ(values[i], values[mask ^ i]);
    }
}

TEST(Maxcut, PopulationMeanIsHalfTotalWeight) {
    const auto &inst = builtin_maxcut();
    const auto st = objective_stats(make_kernel(inst), SolutionSpace::binary(18));
    EXPECT_EQ(st.method, StatsMethod::Exact);
    EXPECT_NEAR(st.mean, inst.total_weight() / 2.0, 1e-10);
}

TEST(Maxcut, ValidationRejectsBadEdges) {
    EXPECT_THROW(validate(MaxcutInstance{3, {{0, 3, 1.0}}}), ValidationError);
    EXPECT_THROW(validate(MaxcutInstance{3, {{0, 1, -1.0}}}), ValidationError);
}

// --- k-means ----------------------------------------------------------------

TEST(KMeans, IdenticalPointsInOneClusterCostNothing) {
    KMeansInstance inst{2, 2, {{1.0, 2.0}, {1.0, 2.0}}};
    EXPECT_EQ(kmeans_objective(inst, Solution{0, 0}), 0.0);
}

TEST(KMeans, TwoPointsGiveTheirSquaredDistance) {
    KMeansInstance inst{2, 2, {{0.0, 0.0}, {3.0, 4.0}}};
    EXPECT_DOUBLE_EQ(kmeans_objective(inst, Solution{1, 1}), 25.0);
    EXPECT_DOUBLE_EQ(kmeans_objective(inst, Solution{0, 1}), 0.0);
}

TEST(KMeans, PairwiseFormMatchesCentroidForm) {
    const auto tiny = small_kmeans(3, 2, 3);
    for (Index i = 0; i < 8; ++i) {
        const auto x = index_to_solution(SolutionSpace::integer(3, 2), i);
        EXPECT_NEAR(kmeans_objective(tiny, x), centroid_form(tiny, x), 1e-10);
    }
    const auto inst = std::get<KMeansInstance>(load_builtin("kmeans-n12k3"));
    std::mt19937_64 rng(5);
    const auto space = SolutionSpace::integer(12, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = index_to_solution(space, sample_index(space, rng));
        EXPECT_NEAR(kmeans_objective(inst, x), centroid_form(inst, x), 1e-9);
    }
}

TEST(KMeans, RelabelInvariance) {
    const auto inst = std::get<KMeansInstance>(load_builtin("kmeans-n12k3"));
    const auto space = SolutionSpace::integer(12, 3);
    const auto kernel = make_kernel(inst);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto x = index_to_solution(space, sample_index(space, rng));
        const double base = kernel(x);
        std::vector<int> relabel{0, 1, 2};
        while (std::next_permutation(relabel.begin(), relabel.end())) {
            Solution y(x.size());
            std::transform(x.begin(), x.end(), y.begin(), [&](int v) { return relabel[v]; });
            ASSERT_NEAR(kernel(y), base, 1e-9);
        }
    }
}

TEST(KMeans, ClusterMeansSmallCasesByEnumeration) {
    // n = k = 2: mu_1 averages the two single-cluster solutions.
    const auto two = small_kmeans(2, 2, 1);
    const auto cm = estimate_cluster_means(two);
    EXPECT_NEAR(cm.means[0],
                0.5 * (kmeans_objective(two, Solution{0, 0}) + kmeans_objective(two, Solution{1, 1})),
                1e-12);
    // k = 2, n = 3: buckets of 2 and 6 recombine to the population mean.
    const auto three = small_kmeans(3, 2, 2);
    const auto c3 = estimate_cluster_means(three);
    EXPECT_EQ(c3.counts[0], 2u);
    EXPECT_EQ(c3.counts[1], 6u);
    const auto st = objective_stats(make_kernel(three), SolutionSpace::integer(3, 2));
    EXPECT_NEAR((2 * c3.means[0] + 6 * c3.means[1]) / 8.0, st.mean, 1e-12);
}

TEST(KMeans, SampledClusterMeansAgreeWithExact) {
    const auto inst = std::get<KMeansInstance>(load_builtin("kmeans-n12k3"));
    const auto exact = estimate_cluster_means(inst);
    ClusterMeansOptions opts;
    opts.method = StatsMethod::Sampled;
    opts.seed = 42;
    const auto sampled = estimate_cluster_means(inst, opts);
    EXPECT_FALSE(sampled.partial);
    for (int j = 0; j < 3; ++j) {
        EXPECT_GE(sampled.counts[j], 10000u);
        // The single-cluster bucket has only 3 members with one common value.
        const double tol = std::max(3.0 * sampled.standard_errors[j], 1e-9 * std::abs(exact.means[j]));
        EXPECT_NEAR(sampled.means[j], exact.means[j], tol) << "j=" << j + 1;
    }
}

TEST(KMeans, SampledClusterMeansReportStarvation) {
    const auto inst = small_kmeans(6, 3, 4);
    ClusterMeansOptions opts;
    opts.method = StatsMethod::Sampled;
    opts.max_attempts_per_bucket = 3;
    opts.per_bucket = 1000;
    EXPECT_TRUE(estimate_cluster_means(inst, opts).partial);
}

TEST(KMeans, TransformKeepsFullClusterSolutions) {
    const auto inst = small_kmeans(6, 3, 6);
    const auto cm = estimate_cluster_means(inst);
    const Solution x{0, 1, 2, 0, 1, 2};
    EXPECT_DOUBLE_EQ(kmeans_transformed_objective(inst, x, cm.means), kmeans_objective(inst, x));
}

TEST(KMeans, TransformAlignsClusterCountMeans) {
    const auto inst = small_kmeans(6, 3, 8);
    const auto cm = estimate_cluster_means(inst);
    const auto f = make_transformed_kmeans_kernel(inst, cm.means);
    const auto space = SolutionSpace::integer(6, 3);
    std::vector<double> sum(3, 0.0);
    std::vector<int> count(3, 0);
    for (Index i = 0; i < space.size(); ++i) {
        const auto x = index_to_solution(space, i);
        sum[cluster_count(x) - 1] += f(x);
        ++count[cluster_count(x) - 1];
    }
    for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(sum[j] / count[j], cm.means[2], 1e-9);
    }
}

TEST(KMeans, TransformKeepsTheGlobalOptimum) {
    const auto inst = std::get<KMeansInstance>(load_builtin("kmeans-n12k3"));
    const auto space = SolutionSpace::integer(12, 3);
    const auto cm = estimate_cluster_means(inst);
    const auto plain = brute_force_optimum(space, make_kernel(inst), Sense::Minimize);
    const auto transformed =
        brute_force_optimum(space, make_transformed_kmeans_kernel(inst, cm.means), Sense::Minimize);
    EXPECT_EQ(plain.solutions, transformed.solutions);
    EXPECT_EQ(plain.solutions.size(), 6u);
}

// --- QAP --------------------------------------------------------------------

TEST(Qap, ZeroFlowsCostNothing) {
    QapInstance inst{3, SquareMatrix(3), SquareMatrix(3)};
    inst.L(0, 1) = inst.L(1, 0) = 2.0;
    EXPECT_EQ(qap_objective(inst, Solution{2, 0, 1}), 0.0);
}

TEST(Qap, HandExpandedTwoByTwo) {
    QapInstance inst{2, SquareMatrix(2), SquareMatrix(2)};
    inst.F(0, 1) = inst.F(1, 0) = 1.0;
    inst.L(0, 1) = inst.L(1, 0) = 3.0;
    EXPECT_DOUBLE_EQ(qap_objective(inst, Solution{0, 1}), 6.0);
}

TEST(Qap, TransposeInvarianceForSymmetricMatrices) {
    const auto inst = std::get<QapInstance>(load_builtin("qap-n9"));
    QapInstance sym = inst;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            sym.F(i, j) = 0.5 * (inst.F(i, j) + inst.F(j, i));
        }
    }
    QapInstance swapped = sym;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            swapped.F(i, j) = sym.F(j, i);
            swapped.L(i, j) = sym.L(j, i);
        }
    }
    std::mt19937_64 rng(4);
    const auto space = SolutionSpace::permutation(9);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = index_to_solution(space, sample_index(space, rng));
        ASSERT_NEAR(qap_objective(sym, x), qap_objective(swapped, x), 1e-9);
    }
}

TEST(Qap, ValidationRejectsAsymmetricDistances) {
    auto inst = std::get<QapInstance>(load_builtin("qap-n9"));
    inst.L(0, 1) += 1.0;
    EXPECT_THROW(validate(inst), ValidationError);
}

// --- MIS --------------------------------------------------------------------

TEST(Mis, EmptySubsetScoresZero) {
    const auto inst = std::get<MisInstance>(load_builtin("mis-n18"));
    EXPECT_EQ(mis_objective(inst, Solution(18, 0), PenaltyVector{{1.5, 0.0}, {}}), 0.0);
}

TEST(Mis, PenaltyTermsCountInternalEdges) {
    MisInstance tri{3, {{0, 1}, {1, 2}, {0, 2}}};
    EXPECT_EQ(mis_violations(tri, Solution{1, 1, 1}), 3);
    EXPECT_DOUBLE_EQ(mis_objective(tri, Solution{1, 1, 1}, PenaltyVector{{0.5, 2.0}, {}}),
                     3.0 - 1.5 - 2.0);
    EXPECT_DOUBLE_EQ(mis_objective(tri, Solution{1, 0, 0}, PenaltyVector{{0.5, 2.0}, {}}), 1.0);
}

TEST(Mis, InvalidSolutionsAreDominatedByARepair) {
    const auto inst = std::get<MisInstance>(load_builtin("mis-n18"));
    const auto space = SolutionSpace::binary(18);
    const PenaltyVector pen{{1.5, 0.0}, {}};
    const auto values = tabulate(space, make_kernel(inst, pen));
    Solution x(18);
    for (Index i = 0; i < space.size(); ++i) {
        decode_into(space, i, x);
        if (mis_violations(inst, x) == 0) {
            continue;
        }
        auto y = x;
        for (const auto &[a, b] : inst.edges) {
            if (y[a] == 1 && y[b] == 1) {
                y[b] = 0;
            }
        }
        ASSERT_EQ(mis_violations(inst, y), 0);
        ASSERT_LE(values[i], values[encode(space, y)]);
    }
}

TEST(Mis, ArgmaxIsIndependentSetOfNine) {
    const auto problem = load_builtin("mis-n18");
    const auto bf = brute_force_optimum(problem, PenaltyVector{{1.5, 0.0}, {}});
    EXPECT_EQ(bf.value, 9.0);
    ASSERT_EQ(bf.solutions.size(), 2u);
    for (Index s : bf.solutions) {
        EXPECT_TRUE(is_valid(problem, index_to_solution(SolutionSpace::binary(18), s)));
    }
}

// --- CFLP -------------------------------------------------------------------

namespace {

CflpInstance tiny_cflp() {
    // Two customers, two sites, capacity 10 each.
    return CflpInstance{2, 2, {6, 7}, {10, 10}, {{1.0, 2.0}, {3.0, 0.5}}, {100.0, 50.0}};
}

} // namespace

TEST(Cflp, ZeroPenaltyIsPlainCost) {
    const auto inst = tiny_cflp();
    // both at site 0: 6*1 + 7*3 + 100 = 127
    EXPECT_DOUBLE_EQ(cflp_objective(inst, Solution{0, 0}, PenaltyVector{{0, 0, 0}, {}}), 127.0);
    // split: 6*1 + 7*0.5 + 100 + 50 = 159.5
    EXPECT_DOUBLE_EQ(cflp_objective(inst, Solution{0, 1}, PenaltyVector{}), 159.5);
}

TEST(Cflp, OverCapacityTermsFollowTheirDefinition) {
    const auto inst = tiny_cflp();
    const CflpModel model(inst);
    EXPECT_DOUBLE_EQ(model.mean_transport(), (1.0 + 2.0 + 3.0 + 0.5) / 4.0);
    EXPECT_DOUBLE_EQ(model.mean_opening(), 75.0);
    // load 13 at site 0, excess 3, one block of capacity.
    const double expect = 127.0 + 2.0 * model.mean_transport() * 3 + 0.5 * 75.0 * 1;
    EXPECT_DOUBLE_EQ(cflp_objective(inst, Solution{0, 0}, PenaltyVector{{2.0, 0.5, 0.0}, {}}), expect);
}

TEST(Cflp, CeilingUsesExactIntegerBlocks) {
    // Site 1 is never used; opening costs 6 and 2 give a mean of 4.
    CflpInstance inst{2, 2, {10, 10}, {10, 10}, {{0.0, 0.0}, {0.0, 0.0}}, {6.0, 2.0}};
    const CflpModel model(inst);
    // excess exactly one capacity -> one block
    EXPECT_DOUBLE_EQ(model.capacity_penalised(Solution{0, 0}, 0.0, 1.0), 6.0 + 4.0);
    inst.R = {10, 11};
    const CflpModel m2(inst);
    EXPECT_DOUBLE_EQ(m2.capacity_penalised(Solution{0, 0}, 0.0, 1.0), 6.0 + 2 * 4.0);
}

TEST(Cflp, ThirdTermNeedsAReference) {
    const auto inst = tiny_cflp();
    EXPECT_THROW(cflp_objective(inst, Solution{0, 0}, PenaltyVector{{1, 1, 0.5}, {}}), ConfigError);
    EXPECT_THROW(make_kernel(ProblemInstance{inst}, PenaltyVector{{1, 1, 0.5}, {}}), ConfigError);
    // With a reference, an invalid value moves towards the reference value.
    const PenaltyVector pv{{1, 1, 0.25}, Solution{0, 1}};
    const CflpModel model(inst);
    const double g = model.capacity_penalised(Solution{0, 0}, 1, 1);
    const double gy = model.capacity_penalised(Solution{0, 1}, 1, 1);
    EXPECT_DOUBLE_EQ(cflp_objective(inst, Solution{0, 0}, pv), g - 0.25 * (g - gy));
}

TEST(Cflp, BuiltinValidFractionAndPenaltyQuality) {
    const auto problem = load_builtin("cflp-n12k3");
    const auto &inst = std::get<CflpInstance>(problem);
    const auto space = space_of(problem);
    const CflpModel model(inst);
    const PenaltyVector pv{{1, 1, 0}, {}};
    long valid = 0;
    double best_valid = 1e300;
    double best_invalid = 1e300;
    Solution x(12);
    for (Index i = 0; i < space.size(); ++i) {
        decode_into(space, i, x);
        const double v = model.penalised(x, pv);
        if (model.is_valid(x)) {
            ++valid;
            best_valid = std::min(best_valid, v);
            ASSERT_EQ(v, model.cost(x));
        } else {
            best_invalid = std::min(best_invalid, v);
        }
    }
    EXPECT_NEAR(static_cast<double>(valid) / space.size(), 0.46, 0.01);
    EXPECT_GT(best_invalid, best_valid);
}

TEST(Penalties, NegativeCoefficientsAreRejected) {
    EXPECT_THROW(make_kernel(load_builtin("mis-n18"), PenaltyVector{{-1.0, 0.0}, {}}), ConfigError);
}

TEST(Penalties, TablesReproduceTheKernels) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> lam(0.0, 2.0);
    for (const char *name : {"mis-n18", "cflp-n12k3"}) {
        const auto problem = load_builtin(name);
        const auto space = space_of(problem);
        std::optional<Solution> ref;
        if (const auto *c = std::get_if<CflpInstance>(&problem)) {
            ref = cflp_reference_solution(*c);
        }
        const auto tables = tabulate_penalties(problem, ref);
        for (int trial = 0; trial < 3; ++trial) {
            PenaltyVector pv{{lam(rng), lam(rng)}, ref};
            if (tables.pull_back) {
                pv.lambda.push_back(0.3 * trial);
            }
            std::vector<double> out;
            tables.evaluate(pv, out);
            const auto kernel = make_kernel(problem, pv);
            for (int s = 0; s < 2000; ++s) {
                const Index i = sample_index(space, rng);
                ASSERT_NEAR(out[i], kernel(index_to_solution(space, i)), 1e-9 * (1 + std::abs(out[i])))
                    << name;
            }
        }
    }
}

// --- statistics -------------------------------------------------------------

TEST(Stats, ConstantObjectiveHasZeroSpread) {
    const auto st = objective_stats([](std::span<const int>) { return 3.5; }, SolutionSpace::binary(6));
    EXPECT_EQ(st.mean, 3.5);
    EXPECT_EQ(st.stddev, 0.0);
}

TEST(Stats, ExactMatchesOnePassBruteForce) {
    const auto kernel = make_kernel(builtin_maxcut());
    const auto space = SolutionSpace::binary(18);
    const auto st = objective_stats(kernel, space);
    double s = 0.0;
    double s2 = 0.0;
    for (Index i = 0; i < space.size(); ++i) {
        const double v = kernel(index_to_solution(space, i));
        s += v;
        s2 += v * v;
    }
    const double n = static_cast<double>(space.size());
    const double mean = s / n;
    const double sd = std::sqrt(s2 / n - mean * mean);
    EXPECT_NEAR(st.mean, mean, 1e-10 * mean);
    EXPECT_NEAR(st.stddev, sd, 1e-8 * sd);
}

TEST(Stats, SampledSigmaWithinFivePercent) {
    const auto kernel = make_kernel(builtin_maxcut());
    const auto space = SolutionSpace::binary(18);
    const auto exact = objective_stats(kernel, space);
    StatsOptions opts;
    opts.mode = StatsOptions::Mode::Sampled;
    opts.seed = 123;
    const auto sampled = objective_stats(kernel, space, opts);
    EXPECT_EQ(sampled.method, StatsMethod::Sampled);
    EXPECT_EQ(sampled.sample_count, 10000u);
    EXPECT_NEAR(sampled.stddev, exact.stddev, 0.05 * exact.stddev);
}

TEST(Stats, ResultsDoNotDependOnThreadCount) {
    const auto kernel = make_kernel(load_builtin("qap-n9"));
    const auto space = SolutionSpace::permutation(9);
    set_thread_count(1);
    const auto a = table_stats(tabulate(space, kernel));
    set_thread_count(4);
    const auto b = table_stats(tabulate(space, kernel));
    set_thread_count(0);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.stddev, b.stddev);
}
