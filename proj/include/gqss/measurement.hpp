// Copyright 2026 The gqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Projective measurements that remove the measured qubits from the register.
// Outcome 0 is the +1 eigenstate of the measured Pauli.

#include <algorithm>
#include <array>
#include <utility>
#include <cmath>
#include <span>
#include <vector>

#include "gqss/linalg.hpp"
#include "gqss/random.hpp"

namespace gqss {

/// Eigenvector of a single-qubit Pauli for outcome 0 (+1) or 1 (-1).
inline std::array<Complex, 2> pauli_eigenvector(Pauli basis, int outcome) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (basis) {
        case Pauli::Z:
            return outcome == 0 ? std::array<Complex, 2>{1.0, 0.0} : std::array<Complex, 2>{0.0, 1.0};
        case Pauli::X:
            return {r, outcome == 0 ? r : -r};
        case Pauli::Y:
            return {r, outcome == 0 ? Complex(0, r) : Complex(0, -r)};
        case Pauli::I:
            break;
    }
    throw ArgumentError("cannot measure in the identity basis");
}

namespace detail {

struct QubitSplit {
    std::vector<std::size_t> measured;
    std::vector<std::size_t> rest;
    std::size_t n;
    // Full-register offsets of every rest / measured bit pattern; an index is their OR.
    std::vector<std::size_t> rest_offset;
    std::vector<std::size_t> meas_offset;

    std::size_t compose(std::size_t rest_bits, std::size_t meas_bits) const {
        return rest_offset[rest_bits] | meas_offset[meas_bits];
    }
};

inline std::vector<std::size_t> scatter_table(const std::vector<std::size_t>& qubits, std::size_t n) {
    const std::size_t k = qubits.size();
    std::vector<std::size_t> t(std::size_t{1} << k, 0);
    for (std::size_t bits = 0; bits < t.size(); ++bits) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < k; ++i) {
            idx |= ((bits >> (k - 1 - i)) & 1U) << (n - 1 - qubits[i]);
        }
        t[bits] = idx;
    }
    return t;
}

inline QubitSplit split_qubits(std::span<const std::size_t> measured, std::size_t n) {
    QubitSplit s{{measured.begin(), measured.end()}, {}, n, {}, {}};
    for (std::size_t q : s.measured) {
        if (q >= n) {
            throw ArgumentError("measured qubit out of range");
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(s.measured.begin(), s.measured.end(), q) == s.measured.end()) {
            s.rest.push_back(q);
        }
    }
    if (s.rest.size() + s.measured.size() != n) {
        throw ArgumentError("measured qubits contain duplicates");
    }
    if (s.rest.empty()) {
        throw ArgumentError("cannot project out every qubit of the register");
    }
    s.rest_offset = scatter_table(s.rest, n);
    s.meas_offset = scatter_table(s.measured, n);
    return s;
}

}  // namespace detail

/// <w|_Q rho |w>_Q on the remaining qubits (unnormalized; its trace is the
/// branch probability). `w` is a vector on the qubits Q in the listed order.
inline Matrix project_out(const Matrix& rho, std::size_t n, std::span<const std::size_t> qubits,
                          std::span<const Complex> w) {
    const auto split = detail::split_qubits(qubits, n);
    const std::size_t dm = std::size_t{1} << split.measured.size();
    if (w.size() != dm) {
        throw ArgumentError("projection vector has the wrong dimension");
    }
    const std::size_t dr = std::size_t{1} << split.rest.size();
    std::vector<std::pair<std::size_t, Complex>> nz;
    for (std::size_t a = 0; a < dm; ++a) {
        if (w[a] != Complex{}) {
            nz.emplace_back(split.meas_offset[a], w[a]);
        }
    }
    Matrix out(dr, dr);
    for (std::size_t r = 0; r < dr; ++r) {
        const std::size_t ro = split.rest_offset[r];
        for (std::size_t c = 0; c < dr; ++c) {
            const std::size_t co = split.rest_offset[c];
            Complex acc = 0.0;
            for (const auto& [ao, wa] : nz) {
                Complex inner = 0.0;
                for (const auto& [bo, wb] : nz) {
                    inner += rho(ro | ao, co | bo) * wb;
                }
                acc += std::conj(wa) * inner;
            }
            out(r, c) = acc;
        }
    }
    return out;
}

/// (<w|_Q (x) I) psi, unnormalized.
inline std::vector<Complex> project_out(std::span<const Complex> psi, std::size_t n,
                                        std::span<const std::size_t> qubits, std::span<const Complex> w) {
    const auto split = detail::split_qubits(qubits, n);
    const std::size_t dm = std::size_t{1} << split.measured.size();
    if (w.size() != dm) {
        throw ArgumentError("projection vector has the wrong dimension");
    }
    const std::size_t dr = std::size_t{1} << split.rest.size();
    std::vector<Complex> out(dr);
    for (std::size_t r = 0; r < dr; ++r) {
        Complex s = 0.0;
        for (std::size_t a = 0; a < dm; ++a) {
            s += std::conj(w[a]) * psi[split.compose(r, a)];
        }
        out[r] = s;
    }
    return out;
}

struct MeasuredState {
    int outcome = 0;
    double probability = 0.0;
    DensityMatrix post;  // remaining qubits, ascending order
};

struct MeasuredPure {
    int outcome = 0;
    double probability = 0.0;
    StateVector post;
};

/// Branch of a single-qubit Pauli measurement with a fixed outcome.
/// Returns probability 0 and an empty state when the branch cannot occur.
inline MeasuredState measurement_branch(const DensityMatrix& rho, std::size_t qubit, Pauli basis, int outcome) {
    const auto v = pauli_eigenvector(basis, outcome);
    const std::size_t q[1] = {qubit};
    Matrix m = project_out(rho.matrix(), rho.qubits(), q, v);
    const double p = m.trace().real();
    if (p < 1e-14) {
        return {outcome, 0.0, {}};
    }
    return {outcome, p, DensityMatrix::normalized(std::move(m))};
}

inline MeasuredPure measurement_branch(const StateVector& psi, std::size_t qubit, Pauli basis, int outcome) {
    const auto v = pauli_eigenvector(basis, outcome);
    const std::size_t q[1] = {qubit};
    auto out = project_out(psi.amplitudes(), psi.qubits(), q, v);
    double p = 0.0;
    for (const auto& a : out) {
        p += std::norm(a);
    }
    if (p < 1e-14) {
        return {outcome, 0.0, {}};
    }
    return {outcome, p, StateVector::normalized(std::move(out))};
}

inline MeasuredState measure(const DensityMatrix& rho, std::size_t qubit, Pauli basis, Rng& rng) {
    auto zero = measurement_branch(rho, qubit, basis, 0);
    if (zero.probability > 0.0 && rng.uniform() < zero.probability) {
        return zero;
    }
    auto one = measurement_branch(rho, qubit, basis, 1);
    if (one.probability == 0.0) {
        return zero;
    }
    return one;
}

inline MeasuredPure measure(const StateVector& psi, std::size_t qubit, Pauli basis, Rng& rng) {
    auto zero = measurement_branch(psi, qubit, basis, 0);
    if (zero.probability > 0.0 && rng.uniform() < zero.probability) {
        return zero;
    }
    auto one = measurement_branch(psi, qubit, basis, 1);
    if (one.probability == 0.0) {
        return zero;
    }
    return one;
}

/// Bell basis on two qubits, indexed by (phase bit, parity bit):
/// 0 = |00>+|11>, 1 = |01>+|10>, 2 = |00>-|11>, 3 = |01>-|10>.
inline std::array<Complex, 4> bell_vector(int index) {
    const double r = 1.0 / std::sqrt(2.0);
    const bool phase = (index >> 1) & 1;
    const bool parity = index & 1;
    std::array<Complex, 4> v{};
    if (!parity) {
        v[0] = r;
        v[3] = phase ? -r : r;
    } else {
        v[1] = r;
        v[2] = phase ? -r : r;
    }
    return v;
}

}  // namespace gqss
