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
 * @file statevector.hpp
 * Dense amplitude array over solution indices.
 */
#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "parallel.hpp"
#include "solution_space.hpp"

namespace qwoa {

using Complex = std::complex<double>;

/// Plain complex product, without the inf/nan recovery path of operator*.
inline Complex cmul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

class Statevector {
  public:
    Statevector() = default;
    explicit Statevector(std::size_t size) : amps_(size) {}
    explicit Statevector(std::vector<Complex> amps) : amps_(std::move(amps)) {}

    /// Computational basis state |idx>.
    static Statevector basis(std::size_t size, std::size_t idx) {
        Statevector out(size);
        out.amps_.at(idx) = 1.0;
        return out;
    }

    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    Complex &operator[](std::size_t i) { return amps_[i]; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] std::span<Complex> amplitudes() { return amps_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] std::vector<Complex> &data() { return amps_; }
    [[nodiscard]] const std::vector<Complex> &data() const { return amps_; }

    [[nodiscard]] double probability(std::size_t i) const { return std::norm(amps_[i]); }

    [[nodiscard]] double norm_squared() const {
        return block_reduce<double>(amps_.size(), [&](std::size_t b, std::size_t e) {
            double acc = 0.0;
            for (auto i = b; i < e; ++i) {
                acc += std::norm(amps_[i]);
            }
            return acc;
        });
    }

    void scale(Complex factor) {
        parallel_blocks(amps_.size(), [&](std::size_t b, std::size_t e) {
            for (auto i = b; i < e; ++i) {
                amps_[i] = cmul(amps_[i], factor);
            }
        });
    }

  private:
    std::vector<Complex> amps_;
};

/// Uniform superposition over every feasible solution.
inline Statevector equal_superposition(const SolutionSpace &space) {
    const auto n = static_cast<std::size_t>(space.size());
    return Statevector(std::vector<Complex>(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0)));
}

/// Max-norm distance between two states.
inline double max_abs_diff(const Statevector &a, const Statevector &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace qwoa
