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
// Runs the fitted p=10 schedule on the 18-vertex maxcut instance and prints
// the per-iteration optimal probability.

#include <cstdio>

#include "qwoa.hpp"

int main() {
    using namespace qwoa;
    const auto problem = load_builtin("maxcut-n18");
    const auto space = space_of(problem);
    const Mixer mixer(space);
    const ObjectiveTable table(space, make_kernel(problem), Sense::Maximize);
    const auto stats = table_stats(table.values());
    std::printf("N=%llu mean=%.4f stddev=%.4f optima=%zu\n", static_cast<unsigned long long>(space.size()),
                stats.mean, stats.stddev, table.optima().size());

    const RunParams rp{2.4340, 0.4517, 0.2844, 10, Sense::Maximize, stats.stddev, {}};
    const auto trace = prepare_amplified(mixer, table, rp);
    for (const auto &it : trace.per_iteration) {
        std::printf("iter %3d  optimal probability %.6f  expectation %.4f\n", it.iter, it.optimal_probability,
                    it.expectation);
    }
    return 0;
}
