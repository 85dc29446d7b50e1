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
 * @file mixers.hpp
 * Continuous-time quantum walk mixers on the hypercube, Hamming and
 * transposition graphs.
 *
 * All mixers act on the logical solution space. Hypercube and Hamming walks
 * factor into independent per-variable passes. The transposition walk is
 * evaluated as a truncated Taylor series with the adjacency applied through a
 * precomputed neighbour table.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "solution_space.hpp"
#include "statevector.hpp"

namespace qwoa {

enum class MixerKind { Hypercube, Hamming, Transposition };

inline const char *to_string(MixerKind k) {
    switch (k) {
    case MixerKind::Hypercube:
        return "hypercube";
    case MixerKind::Hamming:
        return "hamming";
    case MixerKind::Transposition:
        return "transposition";
    }
    return "?";
}

/// The natural mixer for each solution space.
inline MixerKind default_mixer(const SolutionSpace &space) {
    switch (space.kind()) {
    case SpaceKind::Binary:
        return MixerKind::Hypercube;
    case SpaceKind::Integer:
        return MixerKind::Hamming;
    case SpaceKind::Permutation:
        return MixerKind::Transposition;
    }
    return MixerKind::Hypercube;
}

struct MixerInfo {
    double global_phase = 0.0; // phase folded into the emitted state, relative to e^{-itA}
    int terms = 0;             // Taylor terms used (transposition only)
};

struct PolarFactors {
    double r1 = 0.0;
    double r2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi = std::numbers::pi / 2;
    bool degenerate = false;
};

/// Polar forms of k*c_stay and k*c_move for the Hamming walk, with the
/// per-distance phase decrement phi = phi1 - phi2.
inline PolarFactors polar_factors(int k, double t) {
    if (k < 2) {
        throw RangeError("polar_factors needs k >= 2");
    }
    PolarFactors pf;
    const double c = std::cos(k * t);
    const double s = std::sin(k * t);
    pf.r1 = std::sqrt(static_cast<double>(k) * k - 2.0 * (k - 1) * (1.0 - c));
    pf.r2 = std::sqrt(2.0 * (1.0 - c));
    pf.phi1 = std::atan2(-s, k - 1.0 + c);
    if (t == 0.0) {
        pf.degenerate = true;
        pf.phi2 = -std::numbers::pi / 2;
        pf.phi = std::numbers::pi / 2;
        return pf;
    }
    pf.phi2 = std::atan2(s, 1.0 - c) - std::numbers::pi;
    pf.phi = pf.phi1 - pf.phi2;
    return pf;
}

class Mixer {
  public:
    Mixer(MixerKind kind, SolutionSpace space) : kind_(kind), space_(space) {
        if (kind != default_mixer(space)) {
            throw ValidationError(std::string("mixer ") + to_string(kind) +
                                  " does not match solution space " + describe(space));
        }
        if (kind == MixerKind::Transposition) {
            build_neighbours();
        }
    }

    explicit Mixer(const SolutionSpace &space) : Mixer(default_mixer(space), space) {}

    [[nodiscard]] MixerKind kind() const { return kind_; }
    [[nodiscard]] const SolutionSpace &space() const { return space_; }

    /// Phase of the emitted state relative to e^{-itA} at walk time t.
    [[nodiscard]] double global_phase(double t) const {
        return kind_ == MixerKind::Hamming ? -space_.n() * t : 0.0;
    }

    /// Per-distance phase decrement of the walk amplitudes at time t.
    [[nodiscard]] double distance_phase(double t) const {
        return kind_ == MixerKind::Hamming ? polar_factors(space_.radix(), t).phi
                                           : std::numbers::pi / 2;
    }

    /// In-place walk for time t. The Hamming walk emits e^{-int} e^{-itA} psi.
    MixerInfo apply(double t, Statevector &psi) const {
        check_size(psi);
        if (t < 0.0 || !std::isfinite(t)) {
            throw RangeError("walk time must be finite and non-negative");
        }
        MixerInfo info;
        info.global_phase = global_phase(t);
        if (t == 0.0) {
            return info;
        }
        switch (kind_) {
        case MixerKind::Hypercube:
            apply_hypercube(t, psi);
            break;
        case MixerKind::Hamming:
            apply_hamming(t, psi);
            break;
        case MixerKind::Transposition:
            info.terms = apply_taylor(t, psi);
            break;
        }
        return info;
    }

    /// out = A in, by enumerating the d moves of each solution.
    void adjacency(const Statevector &in, Statevector &out) const {
        check_size(in);
        out = Statevector(in.size());
        const Complex *src = in.data().data();
        Complex *dst = out.data().data();
        if (kind_ == MixerKind::Transposition) {
            gather(src, dst);
            return;
        }
        const auto k = static_cast<std::size_t>(space_.radix());
        for (int var = 0; var < space_.n(); ++var) {
            for_each_group(var, [&](std::size_t base, std::size_t stride) {
                Complex sum = 0.0;
                for (std::size_t v = 0; v < k; ++v) {
                    sum += src[base + v * stride];
                }
                for (std::size_t v = 0; v < k; ++v) {
                    dst[base + v * stride] += sum - src[base + v * stride];
                }
            });
        }
    }

  private:
    /// Calls fn(base, stride) for every group of k indices that differ only
    /// in variable var, walking contiguous runs to avoid per-group division.
    template <class Fn> void for_each_group(int var, Fn &&fn) const {
        const auto k = static_cast<std::size_t>(space_.radix());
        std::size_t stride = 1;
        for (int v = 0; v < var; ++v) {
            stride *= k;
        }
        const std::size_t groups = static_cast<std::size_t>(space_.size()) / k;
        parallel_blocks(groups, [&](std::size_t beg, std::size_t end) {
            std::size_t g = beg;
            while (g < end) {
                const std::size_t j = g % stride;
                const std::size_t run = std::min(stride - j, end - g);
                const std::size_t base = (g / stride) * stride * k + j;
                for (std::size_t r = 0; r < run; ++r) {
                    fn(base + r, stride);
                }
                g += run;
            }
        });
    }

    void check_size(const Statevector &psi) const {
        if (psi.size() != space_.size()) {
            throw ValidationError("state length does not match the solution space");
        }
    }

    void apply_hypercube(double t, Statevector &psi) const {
        const double c = std::cos(t);
        const double sn = std::sin(t);
        Complex *x = psi.data().data();
        const std::size_t pairs = psi.size() / 2;
        for (int bit = 0; bit < space_.n(); ++bit) {
            const std::size_t stride = std::size_t{1} << bit;
            parallel_blocks(pairs, [&](std::size_t beg, std::size_t end) {
                std::size_t p = beg;
                while (p < end) {
                    const std::size_t j = p & (stride - 1);
                    const std::size_t run = std::min(stride - j, end - p);
                    Complex *lo = x + (((p >> bit) << (bit + 1)) | j);
                    Complex *hi = lo + stride;
                    // [[c, -is], [-is, c]]
                    for (std::size_t r = 0; r < run; ++r) {
                        const Complex u = lo[r];
                        const Complex v = hi[r];
                        lo[r] = {c * u.real() + sn * v.imag(), c * u.imag() - sn * v.real()};
                        hi[r] = {c * v.real() + sn * u.imag(), c * v.imag() - sn * u.real()};
                    }
                    p += run;
                }
            });
        }
    }

    void apply_hamming(double t, Statevector &psi) const {
        const int k = space_.radix();
        const Complex e = std::exp(Complex(0.0, -k * t));
        const Complex c_move = (e - 1.0) / static_cast<double>(k);
        Complex *x = psi.data().data();
        const auto kk = static_cast<std::size_t>(k);
        for (int var = 0; var < space_.n(); ++var) {
            for_each_group(var, [&](std::size_t base, std::size_t stride) {
                Complex sum = 0.0;
                for (std::size_t v = 0; v < kk; ++v) {
                    sum += x[base + v * stride];
                }
                const Complex shift = cmul(c_move, sum);
                for (std::size_t v = 0; v < kk; ++v) {
                    x[base + v * stride] += shift; // c_stay - c_move = 1
                }
            });
        }
    }

    void build_neighbours() {
        const int n = space_.n();
        const int d = space_.degree();
        const auto size = static_cast<std::size_t>(space_.size());
        if (size * static_cast<std::size_t>(d) > (std::size_t{1} << 28)) {
            throw UnsupportedError("transposition mixer limited to N*d <= 2^28");
        }
        auto table = std::make_shared<std::vector<std::uint32_t>>(size * d);
        auto &nb = *table;
        parallel_blocks(size, [&](std::size_t b, std::size_t e) {
            Solution x(static_cast<std::size_t>(n));
            for (auto idx = b; idx < e; ++idx) {
                decode_into(space_, idx, x);
                std::size_t slot = idx * d;
                for (int i = 0; i < n; ++i) {
                    for (int j = i + 1; j < n; ++j) {
                        std::swap(x[i], x[j]);
                        nb[slot++] = static_cast<std::uint32_t>(encode(space_, x));
                        std::swap(x[i], x[j]);
                    }
                }
            }
        });
        neighbours_ = std::move(table);
    }

    void gather(const Complex *src, Complex *dst) const {
        const auto d = static_cast<std::size_t>(space_.degree());
        const std::uint32_t *nb = neighbours_->data();
        parallel_blocks(space_.size(), [&](std::size_t b, std::size_t e) {
            for (auto i = b; i < e; ++i) {
                const std::uint32_t *row = nb + i * d;
                Complex acc = 0.0;
                for (std::size_t m = 0; m < d; ++m) {
                    acc += src[row[m]];
                }
                dst[i] = acc;
            }
        });
    }

    // Splits t so each step has t*d <= 3, keeping the series terms small.
    int apply_taylor(double t, Statevector &psi) const {
        const double d = space_.degree();
        const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) * d / 3.0)));
        int terms = 0;
        for (int s = 0; s < steps; ++s) {
            terms += apply_taylor_step(t / steps, psi);
        }
        return terms;
    }

    int apply_taylor_step(double t, Statevector &psi) const {
        constexpr int kMaxTerms = 500;
        constexpr double kTol = 1e-14;
        const auto n = psi.size();
        const double d = space_.degree();
        const double norm0 = std::sqrt(psi.norm_squared());
        if (norm0 == 0.0) {
            return 0;
        }
        std::vector<Complex> term(psi.data());
        std::vector<Complex> next(n);
        Complex *sum = psi.data().data();
        for (int m = 1; m <= kMaxTerms; ++m) {
            gather(term.data(), next.data());
            const double tau = t / m; // term *= -i t / m
            const double term_norm = std::sqrt(block_reduce<double>(
                n, [&](std::size_t b, std::size_t e) {
                    double acc = 0.0;
                    for (auto i = b; i < e; ++i) {
                        next[i] = {tau * next[i].imag(), -tau * next[i].real()};
                        sum[i] += next[i];
                        acc += std::norm(next[i]);
                    }
                    return acc;
                }));
            term.swap(next);
            // Once t*d/(m+1) < 1/2 the remaining tail is below twice this term.
            if (term_norm < kTol * norm0 && 2.0 * t * d < m + 1) {
                const double factor_norm = norm0 / std::sqrt(psi.norm_squared());
                if (std::abs(factor_norm - 1.0) > 1e-12) {
                    throw NumericError("transposition series lost normalisation");
                }
                psi.scale(factor_norm);
                return m;
            }
        }
        throw NumericError("transposition series did not converge; walk time too large");
    }

    MixerKind kind_;
    SolutionSpace space_;
    std::shared_ptr<const std::vector<std::uint32_t>> neighbours_;
};

/// Convenience wrappers.
inline MixerInfo apply_mixer(const Mixer &mixer, double t, Statevector &psi) {
    return mixer.apply(t, psi);
}

inline Statevector adjacency_apply(const Mixer &mixer, const Statevector &psi) {
    Statevector out;
    mixer.adjacency(psi, out);
    return out;
}

struct PhaseReport {
    double max_phase_deviation = 0.0;
    double min_magnitude = 0.0; // smallest signed radial component r_x
    double phi = 0.0;
    double global_phase = 0.0;
    bool holds = false;
};

inline double wrap_phase(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

/// Walks from |u> and checks that every amplitude at distance h has argument
/// globalPhase - h*phi. r_x is the amplitude projected on that direction, so a
/// negative value flags a sign flip.
inline PhaseReport verify_phase_condition(const Mixer &mixer, double t, std::span<const int> u) {
    const auto &space = mixer.space();
    const Index start = solution_to_index(space, u);
    auto psi = Statevector::basis(space.size(), start);
    mixer.apply(t, psi);
    PhaseReport rep;
    rep.phi = mixer.distance_phase(t);
    rep.global_phase = mixer.kind() == MixerKind::Hamming
                           ? space.n() * polar_factors(space.radix(), t).phi1
                           : 0.0;
    rep.min_magnitude = std::numeric_limits<double>::infinity();
    Solution x(static_cast<std::size_t>(space.n()));
    for (Index i = 0; i < space.size(); ++i) {
        decode_into(space, i, x);
        const int h = distance(space, u, x);
        const Complex rotated =
            psi[i] * std::exp(Complex(0.0, h * rep.phi - rep.global_phase));
        rep.min_magnitude = std::min(rep.min_magnitude, rotated.real());
        if (std::abs(rotated) > 1e-300) {
            rep.max_phase_deviation =
                std::max(rep.max_phase_deviation, std::abs(wrap_phase(std::arg(rotated))));
        }
    }
    if (mixer.kind() == MixerKind::Transposition) {
        rep.holds = rep.max_phase_deviation < 1e-6 && rep.min_magnitude > 0.0;
    } else {
        rep.holds = rep.max_phase_deviation < 1e-8;
    }
    return rep;
}

} // namespace qwoa
