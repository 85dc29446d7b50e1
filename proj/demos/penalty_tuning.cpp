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
// Compares a fixed penalty with a tuned one on the MIS instance.

#include <cstdio>

#include "qwoa.hpp"

int main() {
    using namespace qwoa;
    const auto problem = load_builtin("mis-n18");
    const auto space = space_of(problem);
    const Mixer mixer(space);
    const PenaltyVector lf{{1.5, 0.0}, {}};
    const ObjectiveTable table(space, make_kernel(problem, lf), Sense::Maximize);
    const RunParams init{1.0, 0.1, 0.1, 10, Sense::Maximize, table_stats(table.values()).stddev, {}};

    const auto fixed = optimize_params(mixer, table, init);
    const auto tables = tabulate_penalties(problem);
    const auto tuned = tune_penalty(mixer, tables, table, lf, init);
    std::vector<double> phase;
    tables.evaluate(*tuned.lambda_t, phase);

    const auto prob = [&](std::span<const double> f, const RunParams &rp) {
        return prepare_amplified(mixer, f, table, rp).per_iteration.back().optimal_probability;
    };
    std::printf("fixed  gamma=%.4f t=%.4f beta=%.4f  optimal probability %.4f\n", fixed.params.gamma,
                fixed.params.t, fixed.params.beta, prob(table.values(), fixed.params));
    std::printf("tuned  gamma=%.4f t=%.4f beta=%.4f lambda=(%.4f, %.4f)  optimal probability %.4f\n",
                tuned.params.gamma, tuned.params.t, tuned.params.beta, tuned.lambda_t->lambda[0],
                tuned.lambda_t->lambda[1], prob(phase, tuned.params));
    return 0;
}
