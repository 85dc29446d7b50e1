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

#include <bit>
#include <cmath>
#include <numbers>

#include "qwoa/oracles.hpp"
#include "test_util.hpp"

using namespace qwoa;

namespace {

QubitState random_qubit_state(int q, std::uint64_t seed) {
    const auto psi = qwoa::testing::random_state(std::size_t{1} << q, seed);
    QubitState s{q, std::vector<Complex>(psi.size())};
    for (std::size_t i = 0; i < psi.size(); ++i) {
        s.amplitudes[i] = psi[i];
    }
    return s;
}

double uniform_error(const QubitState &s, const std::vector<std::uint64_t> &support) {
    const double want = 1.0 / std::sqrt(static_cast<double>(support.size()));
    std::vector<double> target(s.amplitudes.size(), 0.0);
    for (auto i : support) {
        target[i] = want;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        worst = std::max(worst, std::abs(s.amplitudes[i] - target[i]));
    }
    return worst;
}

// Complete-graph adjacency on k vertices.
Eigen::MatrixXd complete_graph(int k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(k, k);
    a.diagonal().setZero();
    return a;
}

// Qubit index of a logical integer solution, register j at offset j*width.
std::uint64_t embed(const Solution &x, Encoding e, int width) {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        idx |= encode_value(x[j], e) << (j * width);
    }
    return idx;
}

} // namespace

TEST(Simulator, Basics) {
    const auto r = random_qubit_state(3, 1);
    EXPECT_EQ(simulate_circuit(Circuit{3, {}}, r).amplitudes, r.amplitudes);

    Circuit h{1, {}};
    h.h(0);
    const auto plus = simulate_circuit(h, QubitState::zero(1));
    EXPECT_NEAR(plus.amplitudes[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(plus.amplitudes[1].real(), 1 / std::sqrt(2.0), 1e-15);

    Circuit xx{3, {}};
    xx.x(1).x(1);
    const auto out = simulate_circuit(xx, r);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_EQ(out.amplitudes[i], r.amplitudes[i]);
    }
    EXPECT_THROW(simulate_circuit(xx, QubitState::zero(2)), ValidationError);
}

TEST(Simulator, ControlPolarityAndPhase) {
    Circuit c{2, {}};
    c.x(1, {{0, false}});
    EXPECT_EQ(simulate_circuit(c, QubitState::basis(2, 0)).amplitudes[2], Complex(1.0));
    EXPECT_EQ(simulate_circuit(c, QubitState::basis(2, 1)).amplitudes[1], Complex(1.0));
    Circuit p{1, {}};
    p.phase(0, 0.7);
    const auto s = simulate_circuit(p, QubitState::basis(1, 1));
    EXPECT_NEAR(std::abs(s.amplitudes[1] - std::exp(Complex(0.0, 0.7))), 0.0, 1e-15);
    Circuit cn{2, {}};
    cn.cnot(0, 1);
    EXPECT_EQ(simulate_circuit(cn, QubitState::basis(2, 1)).amplitudes[3], Complex(1.0));
}

TEST(Simulator, ValidationRejectsMalformedCircuits) {
    Circuit c{2, {}};
    c.x(2);
    EXPECT_THROW(validate(c), ValidationError);
    Circuit d{2, {}};
    d.x(0, {{0, true}});
    EXPECT_THROW(validate(d), ValidationError);
    Circuit e{2, {}};
    e.ry(0, std::nan(""));
    EXPECT_THROW(validate(e), ValidationError);
    EXPECT_THROW(validate(Circuit{25, {}}), ValidationError);
}

TEST(Simulator, InverseUndoesCircuit) {
    const auto c = build_hamming_mixer_circuit(3, 0.4, Encoding::Binary);
    Circuit both = c;
    both.append(inverse(c));
    const auto r = random_qubit_state(c.qubits, 2);
    const auto out = simulate_circuit(both, r);
    for (std::size_t i = 0; i < r.amplitudes.size(); ++i) {
        EXPECT_NEAR(std::abs(out.amplitudes[i] - r.amplitudes[i]), 0.0, 1e-14);
    }
}

TEST(UkBinary, UniformOverFirstKStatesUpTo64) {
    for (int k = 2; k <= 64; ++k) {
        const auto c = build_uk_binary(k);
        EXPECT_EQ(c.qubits, qubits_for(k));
        std::vector<std::uint64_t> support;
        for (int v = 0; v < k; ++v) {
            support.push_back(static_cast<std::uint64_t>(v));
        }
        EXPECT_LT(uniform_error(simulate_circuit(c, QubitState::zero(c.qubits)), support), 1e-10)
            << "k=" << k;
    }
}

TEST(UkBinary, TenStartsWithTopRotation) {
    const auto c = build_uk_binary(10);
    ASSERT_FALSE(c.gates.empty());
    EXPECT_EQ(c.gates[0].kind, GateKind::Ry);
    EXPECT_EQ(c.gates[0].target, 3);
    EXPECT_NEAR(c.gates[0].param, 2.0 * std::acos(std::sqrt(0.8)), 1e-15);
    EXPECT_NEAR(c.gates[0].param, 0.927, 5e-4);
}

TEST(UkBinary, PowerOfTwoIsHadamards) {
    const auto c = build_uk_binary(8);
    ASSERT_EQ(c.gates.size(), 3u);
    for (int q = 0; q < 3; ++q) {
        EXPECT_EQ(c.gates[q].kind, GateKind::H);
        EXPECT_EQ(c.gates[q].target, q);
        EXPECT_TRUE(c.gates[q].controls.empty());
    }
}

TEST(UkBinary, ThreeGivesThreeEqualAmplitudes) {
    const auto s = simulate_circuit(build_uk_binary(3), QubitState::zero(2));
    const double a = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(std::abs(s.amplitudes[0] - a), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitudes[1] - a), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitudes[2] - a), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitudes[3]), 0.0, 1e-12);
    EXPECT_THROW(build_uk_binary(1), ValidationError);
}

TEST(UkOneHot, UniformOverOneHotStatesUpTo12) {
    for (int k = 2; k <= 12; ++k) {
        const auto c = build_uk_onehot(k);
        std::vector<std::uint64_t> support;
        for (int v = 0; v < k; ++v) {
            support.push_back(encode_value(v, Encoding::OneHot));
        }
        EXPECT_LT(uniform_error(simulate_circuit(c, QubitState::zero(k)), support), 1e-10) << "k=" << k;
    }
}

TEST(UkOneHot, Structure) {
    const auto c2 = build_uk_onehot(2);
    EXPECT_EQ(c2.gates[0].kind, GateKind::X);
    EXPECT_NEAR(c2.gates[1].param, std::numbers::pi / 2, 1e-15);
    for (int k = 2; k <= 8; ++k) {
        const auto c = build_uk_onehot(k);
        EXPECT_EQ(c.gates.front().kind, GateKind::X);
        EXPECT_EQ(c.gates.front().target, k - 1);
        const auto ry = std::count_if(c.gates.begin(), c.gates.end(),
                                      [](const Gate &g) { return g.kind == GateKind::Ry; });
        EXPECT_EQ(ry, k - 1);
        int i = 0;
        for (const auto &g : c.gates) {
            if (g.kind == GateKind::Ry) {
                EXPECT_NEAR(g.param, 2.0 * std::asin(1.0 / std::sqrt(static_cast<double>(k - i))), 1e-15);
                ++i;
            }
        }
    }
}

TEST(UkOneHot, FourGivesQuarterAmplitudes) {
    const auto s = simulate_circuit(build_uk_onehot(4), QubitState::zero(4));
    for (std::uint64_t i = 0; i < 16; ++i) {
        EXPECT_NEAR(std::abs(s.amplitudes[i]), std::popcount(i) == 1 ? 0.5 : 0.0, 1e-12);
    }
}

TEST(MixerCircuit, MatchesCompleteGraphWalkOnEncodedSubspace) {
    for (auto e : {Encoding::Binary, Encoding::OneHot}) {
        for (int k = 2; k <= 4; ++k) {
            for (double t : {0.0, 0.4, 1.3}) {
                const auto c = build_hamming_mixer_circuit(k, t, e);
                const auto u = circuit_unitary(c);
                const auto want = oracle::expm_hermitian(complete_graph(k), t);
                std::vector<std::vector<Complex>> got(k, std::vector<Complex>(k));
                std::vector<std::vector<Complex>> ref(k, std::vector<Complex>(k));
                for (int j = 0; j < k; ++j) {
                    const auto col = encode_value(j, e);
                    double inside = 0.0;
                    for (int i = 0; i < k; ++i) {
                        got[j][i] = u[col][encode_value(i, e)];
                        ref[j][i] = want(i, j);
                        inside += std::norm(got[j][i]);
                    }
                    EXPECT_NEAR(inside, 1.0, 1e-12) << "leak k=" << k;
                }
                EXPECT_LT(phase_aligned_distance(got, ref), 1e-9)
                    << to_string(e) << " k=" << k << " t=" << t;
            }
        }
    }
}

TEST(MixerCircuit, ThreeStateOracleValue) {
    // exp(-itK_3) on |0> has diagonal (e^{-2it} + 2e^{it})/3, off-diagonal (e^{-2it} - e^{it})/3.
    const double t = 0.4;
    const auto u = circuit_unitary(build_hamming_mixer_circuit(3, t, Encoding::OneHot));
    const Complex d = (std::exp(Complex(0, -2 * t)) + 2.0 * std::exp(Complex(0, t))) / 3.0;
    const Complex o = (std::exp(Complex(0, -2 * t)) - std::exp(Complex(0, t))) / 3.0;
    const Complex ph = u[1][1] / d;
    EXPECT_NEAR(std::abs(ph), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(u[1][2] - ph * o), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u[1][4] - ph * o), 0.0, 1e-12);
}

TEST(MixerCircuit, PipelineReproducesLogicalHammingMixer) {
    for (auto e : {Encoding::Binary, Encoding::OneHot}) {
        for (int n = 1; n <= 2; ++n) {
            for (int k = 2; k <= 4; ++k) {
                const double t = 0.37;
                const auto space = SolutionSpace::integer(n, k);
                const Mixer mixer(space);
                const auto reg = build_hamming_mixer_circuit(k, t, e);
                const int w = reg.qubits;
                Circuit full{n * w, {}};
                for (int j = 0; j < n; ++j) {
                    full.append(reg, j * w);
                }
                auto psi = qwoa::testing::random_state(space.size(), 10 * n + k);
                QubitState qs{n * w, std::vector<Complex>(std::size_t{1} << (n * w))};
                for (Index x = 0; x < space.size(); ++x) {
                    qs.amplitudes[embed(index_to_solution(space, x), e, w)] = psi[x];
                }
                const auto out = simulate_circuit(full, qs);
                mixer.apply(t, psi);
                std::vector<std::vector<Complex>> got(1, std::vector<Complex>(space.size()));
                std::vector<std::vector<Complex>> ref(1, std::vector<Complex>(space.size()));
                double inside = 0.0;
                for (Index x = 0; x < space.size(); ++x) {
                    got[0][x] = out.amplitudes[embed(index_to_solution(space, x), e, w)];
                    ref[0][x] = psi[x];
                    inside += std::norm(got[0][x]);
                }
                EXPECT_NEAR(inside, 1.0, 1e-10);
                EXPECT_LT(phase_aligned_distance(got, ref), 1e-9)
                    << to_string(e) << " n=" << n << " k=" << k;
            }
        }
    }
}

TEST(PermutationCircuit, UniformOverOneHotPermutations) {
    std::vector<std::size_t> gates;
    for (int n = 2; n <= 4; ++n) {
        const auto c = build_permutation_superposition(n);
        validate(c);
        gates.push_back(c.gates.size());
        const auto s = simulate_circuit(c, QubitState::zero(n * n));
        const auto space = SolutionSpace::permutation(n);
        std::vector<std::uint64_t> support;
        for (Index r = 0; r < space.size(); ++r) {
            support.push_back(embed(index_to_solution(space, r), Encoding::OneHot, n));
        }
        EXPECT_EQ(support.size(), space.size());
        EXPECT_LT(uniform_error(s, support), 1e-9) << "n=" << n;
    }
    // Cubic growth: gates / n^3 stays bounded and the n=3 to n=4 log slope is at most 3.
    for (int n = 2; n <= 4; ++n) {
        const double ratio = static_cast<double>(gates[n - 2]) / (n * n * n);
        EXPECT_GT(ratio, 0.5);
        EXPECT_LT(ratio, 2.0);
    }
    EXPECT_LE(std::log(static_cast<double>(gates[2]) / gates[1]) / std::log(4.0 / 3.0), 3.0);
}

TEST(PermutationCircuit, UnsupportedCases) {
    EXPECT_THROW(build_permutation_superposition(5), UnsupportedError);
    EXPECT_THROW(build_permutation_superposition(1), UnsupportedError);
    EXPECT_THROW(build_permutation_superposition(3, Encoding::Binary), UnsupportedError);
}

TEST(Circuits, NormPreservedOnRandomInputs) {
    std::vector<Circuit> cs{build_uk_binary(11), build_uk_onehot(6), build_hamming_mixer_circuit(5, 0.8, Encoding::Binary),
                            build_hamming_mixer_circuit(4, 2.1, Encoding::OneHot), build_permutation_superposition(3)};
    std::uint64_t seed = 30;
    for (const auto &c : cs) {
        const auto out = simulate_circuit(c, random_qubit_state(c.qubits, seed++));
        EXPECT_NEAR(out.norm_squared(), 1.0, 1e-10);
    }
}

TEST(Circuits, UnitaryExtractionLimit) {
    EXPECT_THROW(circuit_unitary(Circuit{13, {}}), UnsupportedError);
}
