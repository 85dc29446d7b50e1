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
 * @file oracles.hpp
 * Dense reference implementations used to check the fast kernels. Needs
 * Eigen; meant for spaces of at most a few thousand states.
 */
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "solution_space.hpp"
#include "statevector.hpp"

namespace qwoa::oracle {

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr Index kDenseLimit = 1000;

/// Adjacency matrix of the space's distance-1 graph, built from pairwise
/// distances.
inline Eigen::MatrixXd dense_adjacency(const SolutionSpace &space) {
    if (space.size() > kDenseLimit) {
        throw UnsupportedError("dense oracle limited to 1000 states");
    }
    const auto n = static_cast<Eigen::Index>(space.size());
    std::vector<Solution> sols;
    for (Index i = 0; i < space.size(); ++i) {
        sols.push_back(index_to_solution(space, i));
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (distance(space, sols[i], sols[j]) == 1) {
                a(i, j) = a(j, i) = 1.0;
            }
        }
    }
    return a;
}

/// exp(-i t H) for a real symmetric H, via its eigendecomposition.
inline DenseMatrix expm_hermitian(const Eigen::MatrixXd &h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto &v = es.eigenvectors();
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        phases(i) = std::exp(Complex(0.0, -t * es.eigenvalues()(i)));
    }
    return v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();
}

inline DenseMatrix dense_walk(const SolutionSpace &space, double t) {
    return expm_hermitian(dense_adjacency(space), t);
}

inline Statevector apply_dense(const DenseMatrix &u, const Statevector &psi) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.size()));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = psi[i];
    }
    const Eigen::VectorXcd w = u * v;
    Statevector out(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        out[i] = w(static_cast<Eigen::Index>(i));
    }
    return out;
}

} // namespace qwoa::oracle
