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
 * @file circuits.hpp
 * Qubit-level circuits for state preparation and the complete-graph walk,
 * with a small statevector simulator used to check them.
 */
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "statevector.hpp"

namespace qwoa {

enum class GateKind { X, H, Ry, P, CNOT };

inline const char *to_string(GateKind k) {
    switch (k) {
    case GateKind::X:
        return "X";
    case GateKind::H:
        return "H";
    case GateKind::Ry:
        return "Ry";
    case GateKind::P:
        return "P";
    case GateKind::CNOT:
        return "CNOT";
    }
    return "?";
}

struct Control {
    int qubit = 0;
    bool polarity = true; // false: fires on |0>
    bool operator==(const Control &) const = default;
};

/// A single-qubit gate with any number of controls. CNOT is an X with one
/// closed control.
struct Gate {
    GateKind kind = GateKind::X;
    int target = 0;
    double param = 0.0;
    std::vector<Control> controls;
};

struct Circuit {
    int qubits = 0;
    std::vector<Gate> gates;

    Circuit &add(Gate g) {
        gates.push_back(std::move(g));
        return *this;
    }
    Circuit &x(int q, std::vector<Control> c = {}) { return add({GateKind::X, q, 0.0, std::move(c)}); }
    Circuit &h(int q, std::vector<Control> c = {}) { return add({GateKind::H, q, 0.0, std::move(c)}); }
    Circuit &ry(int q, double theta, std::vector<Control> c = {}) {
        return add({GateKind::Ry, q, theta, std::move(c)});
    }
    Circuit &phase(int q, double phi, std::vector<Control> c = {}) {
        return add({GateKind::P, q, phi, std::move(c)});
    }
    Circuit &cnot(int control, int target) {
        return add({GateKind::CNOT, target, 0.0, {{control, true}}});
    }
    /// Appends another circuit acting on qubits offset..offset+other.qubits-1.
    Circuit &append(const Circuit &other, int offset = 0) {
        for (auto g : other.gates) {
            g.target += offset;
            for (auto &c : g.controls) {
                c.qubit += offset;
            }
            gates.push_back(std::move(g));
        }
        return *this;
    }
};

inline void validate(const Circuit &c) {
    if (c.qubits < 1 || c.qubits > 24) {
        throw ValidationError("circuits support 1..24 qubits");
    }
    for (const auto &g : c.gates) {
        if (g.target < 0 || g.target >= c.qubits) {
            throw ValidationError("gate target out of range");
        }
        if (!std::isfinite(g.param)) {
            throw ValidationError("gate parameter must be finite");
        }
        if (g.kind == GateKind::CNOT && g.controls.size() != 1) {
            throw ValidationError("CNOT takes exactly one control");
        }
        for (const auto &ctl : g.controls) {
            if (ctl.qubit < 0 || ctl.qubit >= c.qubits || ctl.qubit == g.target) {
                throw ValidationError("control qubit out of range or equal to target");
            }
        }
    }
}

/// Inverse circuit: gates reversed with rotation and phase angles negated.
inline Circuit inverse(const Circuit &c) {
    Circuit out{c.qubits, {}};
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::Ry || g.kind == GateKind::P) {
            g.param = -g.param;
        }
        out.gates.push_back(std::move(g));
    }
    return out;
}

/// Qubit-register state; qubit j is bit j of the basis index.
struct QubitState {
    int qubits = 0;
    std::vector<Complex> amplitudes;

    static QubitState basis(int q, std::uint64_t index) {
        QubitState s{q, std::vector<Complex>(std::size_t{1} << q)};
        s.amplitudes.at(index) = 1.0;
        return s;
    }
    static QubitState zero(int q) { return basis(q, 0); }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amplitudes) {
            s += std::norm(a);
        }
        return s;
    }
};

namespace detail {

using Mat2 = std::array<Complex, 4>;

inline Mat2 gate_matrix(const Gate &g) {
    switch (g.kind) {
    case GateKind::X:
    case GateKind::CNOT:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        return {r, r, r, -r};
    }
    case GateKind::Ry: {
        const double c = std::cos(g.param / 2);
        const double s = std::sin(g.param / 2);
        return {c, -s, s, c};
    }
    case GateKind::P:
        return {1.0, 0.0, 0.0, std::exp(Complex(0.0, g.param))};
    }
    return {};
}

} // namespace detail

inline void apply_gate(const Gate &g, QubitState &s) {
    const auto m = detail::gate_matrix(g);
    std::uint64_t cmask = 0;
    std::uint64_t cval = 0;
    for (const auto &c : g.controls) {
        cmask |= std::uint64_t{1} << c.qubit;
        if (c.polarity) {
            cval |= std::uint64_t{1} << c.qubit;
        }
    }
    const std::uint64_t bit = std::uint64_t{1} << g.target;
    const std::uint64_t size = s.amplitudes.size();
    for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & bit) != 0 || (i & cmask) != cval) {
            continue;
        }
        const Complex a0 = s.amplitudes[i];
        const Complex a1 = s.amplitudes[i | bit];
        s.amplitudes[i] = m[0] * a0 + m[1] * a1;
        s.amplitudes[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

inline QubitState simulate_circuit(const Circuit &c, QubitState state) {
    validate(c);
    if (state.qubits != c.qubits || state.amplitudes.size() != (std::size_t{1} << c.qubits)) {
        throw ValidationError("state and circuit qubit counts differ");
    }
    for (const auto &g : c.gates) {
        apply_gate(g, state);
    }
    return state;
}

/// Dense unitary, column j being the image of basis state j.
inline std::vector<std::vector<Complex>> circuit_unitary(const Circuit &c) {
    if (c.qubits > 12) {
        throw UnsupportedError("dense unitary extraction limited to 12 qubits");
    }
    const std::uint64_t dim = std::uint64_t{1} << c.qubits;
    std::vector<std::vector<Complex>> cols;
    for (std::uint64_t j = 0; j < dim; ++j) {
        cols.push_back(simulate_circuit(c, QubitState::basis(c.qubits, j)).amplitudes);
    }
    return cols;
}

/// Max-norm difference of two equally sized matrices after removing one
/// global phase, aligned on the largest-magnitude entry of b.
inline double phase_aligned_distance(const std::vector<std::vector<Complex>> &a,
                                     const std::vector<std::vector<Complex>> &b) {
    std::size_t bi = 0;
    std::size_t bj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < b[i].size(); ++j) {
            if (std::abs(b[i][j]) > best) {
                best = std::abs(b[i][j]);
                bi = i;
                bj = j;
            }
        }
    }
    Complex phase = 1.0;
    if (best > 0.0 && std::abs(a[bi][bj]) > 0.0) {
        const Complex ratio = a[bi][bj] / b[bi][bj];
        phase = ratio / std::abs(ratio);
    }
    double d = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < b[i].size(); ++j) {
            d = std::max(d, std::abs(a[i][j] - phase * b[i][j]));
        }
    }
    return d;
}

enum class Encoding { Binary, OneHot };

inline const char *to_string(Encoding e) { return e == Encoding::Binary ? "binary" : "onehot"; }

/// ceil(log2 k).
inline int qubits_for(int k) { return k <= 1 ? 0 : std::bit_width(static_cast<unsigned>(k - 1)); }

inline int register_width(int k, Encoding e) { return e == Encoding::Binary ? qubits_for(k) : k; }

/// Basis index of value v within one sub-register.
inline std::uint64_t encode_value(int v, Encoding e) {
    return e == Encoding::Binary ? static_cast<std::uint64_t>(v) : std::uint64_t{1} << v;
}

namespace detail {

inline std::vector<Control> with(std::vector<Control> c, Control extra) {
    c.push_back(extra);
    return c;
}

// Uniform superposition over values 0..k-1 on qubits lo upwards, under ctl.
inline void prepare_uniform(Circuit &c, int k, int lo, const std::vector<Control> &ctl) {
    if (k <= 1) {
        return;
    }
    const int tz = std::countr_zero(static_cast<unsigned>(k));
    const int odd = k >> tz;
    if (odd == 1) {
        for (int q = lo; q < lo + tz; ++q) {
            c.h(q, ctl);
        }
        return;
    }
    const int width = qubits_for(odd);
    const int top = lo + tz + width - 1;
    const int half = 1 << (width - 1);
    c.ry(top, 2.0 * std::acos(std::sqrt(static_cast<double>(half) / odd)), ctl);
    for (int q = lo; q < lo + tz; ++q) {
        c.h(q, ctl);
    }
    for (int q = lo + tz; q < top; ++q) {
        c.h(q, with(ctl, {top, false}));
    }
    prepare_uniform(c, odd - half, lo + tz, with(ctl, {top, true}));
}

} // namespace detail

/// U_k on ceil(log2 k) qubits: uniform amplitude over values 0..k-1.
inline Circuit build_uk_binary(int k) {
    if (k < 2) {
        throw ValidationError("U_k needs k >= 2");
    }
    Circuit c{qubits_for(k), {}};
    detail::prepare_uniform(c, k, 0, {});
    return c;
}

/// U_k on k qubits: uniform amplitude over the k one-hot states. The
/// excitation starts on the last qubit and is peeled off onto qubits
/// 0..k-2 in turn.
inline Circuit build_uk_onehot(int k) {
    if (k < 2) {
        throw ValidationError("U_k needs k >= 2");
    }
    Circuit c{k, {}};
    const int last = k - 1;
    c.x(last);
    for (int i = 0; i + 1 < k; ++i) {
        const double phi = 2.0 * std::asin(1.0 / std::sqrt(static_cast<double>(k - i)));
        if (i == 0) {
            c.ry(0, phi);
        } else {
            c.ry(i, phi, {{last, true}});
        }
        c.cnot(i, last);
    }
    return c;
}

inline Circuit build_uk(int k, Encoding e) {
    return e == Encoding::Binary ? build_uk_binary(k) : build_uk_onehot(k);
}

/// exp(-i t K_k) on one sub-register, up to a global phase: U_k^dagger,
/// a phase -k t on |0...0> (X-conjugated, open controls), then U_k.
inline Circuit build_hamming_mixer_circuit(int k, double t, Encoding e) {
    const Circuit uk = build_uk(k, e);
    Circuit c{uk.qubits, {}};
    c.append(inverse(uk));
    std::vector<Control> open;
    for (int q = 1; q < c.qubits; ++q) {
        open.push_back({q, false});
    }
    c.x(0);
    c.phase(0, -k * t, open);
    c.x(0);
    c.append(uk);
    return c;
}

/// Uniform superposition over the one-hot encoded permutations of 0..n-1.
/// Sub-register j occupies qubits j*n .. j*n+n-1. Each new sub-register is
/// prepared with U_m, turned into a threshold code (qubit v set iff the new
/// value <= v), used to increment every earlier value >= the new one, and
/// restored.
inline Circuit build_permutation_superposition(int n, Encoding e = Encoding::OneHot) {
    if (e != Encoding::OneHot) {
        throw UnsupportedError("permutation preparation is implemented for one-hot encoding only");
    }
    if (n < 2 || n > 4) {
        throw UnsupportedError("permutation preparation supports 2 <= n <= 4");
    }
    Circuit c{n * n, {}};
    const auto q = [n](int reg, int v) { return reg * n + v; };
    c.x(q(0, 0));
    for (int m = 2; m <= n; ++m) {
        const int fresh = m - 1;
        c.append(build_uk_onehot(m), q(fresh, 0));
        for (int v = 1; v < m; ++v) {
            c.cnot(q(fresh, v - 1), q(fresh, v));
        }
        for (int i = 0; i < fresh; ++i) {
            for (int v = m - 2; v >= 0; --v) {
                c.x(q(i, v + 1), {{q(i, v), true}, {q(fresh, v), true}});
                c.x(q(i, v), {{q(i, v + 1), true}, {q(fresh, v), true}});
            }
        }
        for (int v = m - 1; v >= 1; --v) {
            c.cnot(q(fresh, v - 1), q(fresh, v));
        }
    }
    return c;
}

} // namespace qwoa
