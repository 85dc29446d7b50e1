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
// Builds the state-preparation and mixer circuits and prints their sizes.

#include <cstdio>

#include "qwoa.hpp"

int main() {
    using namespace qwoa;
    for (int k : {3, 5, 8, 12}) {
        const auto b = build_uk(k, Encoding::Binary);
        const auto h = build_uk(k, Encoding::OneHot);
        std::printf("U_%-2d binary %2d qubits %3zu gates   one-hot %2d qubits %3zu gates\n", k, b.qubits,
                    b.gates.size(), h.qubits, h.gates.size());
    }
    for (int k : {2, 3, 4}) {
        for (auto e : {Encoding::Binary, Encoding::OneHot}) {
            const auto c = build_hamming_mixer_circuit(k, 0.3, e);
            std::printf("mixer k=%d %-7s %2d qubits %3zu gates\n", k, to_string(e), c.qubits, c.gates.size());
        }
    }
    for (int n = 2; n <= 4; ++n) {
        const auto c = build_permutation_superposition(n);
        const auto s = simulate_circuit(c, QubitState::zero(c.qubits));
        double weight = 0.0;
        int support = 0;
        for (const auto &a : s.amplitudes) {
            if (std::norm(a) > 1e-12) {
                weight += std::norm(a);
                ++support;
            }
        }
        std::printf("permutations n=%d %2d qubits %4zu gates support %d norm %.12f\n", n, c.qubits, c.gates.size(),
                    support, weight);
    }
    return 0;
}
