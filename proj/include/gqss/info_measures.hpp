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

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gqss/graph_state.hpp"
#include "gqss/linalg.hpp"

namespace gqss {

struct EnsembleItem {
    double probability;
    DensityMatrix state;
};

/// {(p_i, rho_i)}: probabilities non-negative and summing to 1, one common dimension.
class ClassicalQuantumEnsemble {
   public:
    explicit ClassicalQuantumEnsemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
        if (items_.empty()) {
            throw ArgumentError("ensemble must have at least one item");
        }
        double total = 0.0;
        for (const auto& it : items_) {
            if (it.probability < 0.0) {
                throw ArgumentError("ensemble probability is negative");
            }
            if (it.state.dim() != items_.front().state.dim()) {
                throw ArgumentError("ensemble states differ in dimension");
            }
            total += it.probability;
        }
        if (std::abs(total - 1.0) > 1e-10) {
            throw ArgumentError("ensemble probabilities sum to " + std::to_string(total));
        }
    }

    const std::vector<EnsembleItem>& items() const { return items_; }
    std::size_t qubits() const { return items_.front().state.qubits(); }

    /// sum_i p_i rho_i
    DensityMatrix average() const {
        Matrix m(items_.front().state.dim(), items_.front().state.dim());
        for (const auto& it : items_) {
            m += it.state.matrix() * Complex(it.probability);
        }
        return DensityMatrix::normalized(std::move(m));
    }

   private:
    std::vector<EnsembleItem> items_;
};

inline double holevo_chi(const ClassicalQuantumEnsemble& e) {
    double chi = von_neumann_entropy(e.average());
    for (const auto& it : e.items()) {
        if (it.probability > 0.0) {
            chi -= it.probability * von_neumann_entropy(it.state);
        }
    }
    return std::max(chi, 0.0);
}

/// S(rho_cut) + S(rho_rest) - S(rho).
inline double mutual_information(const DensityMatrix& rho, std::span<const std::size_t> cut) {
    const std::size_t n = rho.qubits();
    std::set<std::size_t> in(cut.begin(), cut.end());
    if (in.empty() || in.size() >= n || in.size() != cut.size() || *in.rbegin() >= n) {
        throw ArgumentError("mutual information cut must be a nonempty proper subset of the qubits");
    }
    std::vector<std::size_t> a(in.begin(), in.end());
    std::vector<std::size_t> b;
    for (std::size_t q = 0; q < n; ++q) {
        if (!in.count(q)) {
            b.push_back(q);
        }
    }
    return von_neumann_entropy(partial_trace(rho, a)) + von_neumann_entropy(partial_trace(rho, b)) -
           von_neumann_entropy(rho);
}

inline double mutual_information(const DensityMatrix& rho, std::initializer_list<std::size_t> cut) {
    return mutual_information(rho, std::span<const std::size_t>(cut.begin(), cut.size()));
}

// ---------------------------------------------------------------------------
// Witness

struct WitnessTerm {
    double coefficient;
    PauliString op;
};

struct WitnessSpec {
    double constant = 0.0;
    std::vector<WitnessTerm> terms;

    double evaluate(const DensityMatrix& rho) const {
        double w = constant;
        for (const auto& t : terms) {
            if (t.op.qubits() != rho.qubits()) {
                throw ArgumentError("witness acts on " + std::to_string(t.op.qubits()) + " qubits, state has " +
                                    std::to_string(rho.qubits()));
            }
            w += t.coefficient * expectation(rho, t.op);
        }
        return w;
    }

    Matrix to_matrix() const {
        const std::size_t d = std::size_t{1} << terms.front().op.qubits();
        Matrix m = Matrix::identity(d) * Complex(constant);
        for (const auto& t : terms) {
            m += t.op.to_matrix() * Complex(t.coefficient);
        }
        return m;
    }
};

namespace detail {

/// A tilde pattern string uses lowercase for measurements with swapped
/// eigenstates, so "xxIIx" is X~ X~ I I X~ = -XXIIX.
inline PauliString tilde_string(std::string_view pattern) {
    std::string up;
    bool negative = false;
    for (char c : pattern) {
        if (c >= 'a' && c <= 'z') {
            negative = !negative;
            up.push_back(static_cast<char>(c - 'a' + 'A'));
        } else {
            up.push_back(c);
        }
    }
    auto p = PauliString::parse(up);
    return negative ? p.negated() : p;
}

}  // namespace detail

/// Witness for the five-qubit resource with tilde operators realized as -O.
/// The two groups are the expansions of prod (I+S)/2 over two commuting
/// stabilizer triples; the constant and weights are those of
/// 3I - 2(P_even + P_odd), which makes the ideal value -1.
inline WitnessSpec witness_spec(double weight_x = 0.25, double weight_yz = 0.5) {
    WitnessSpec w{9.0 / 4.0, {}};
    for (const char* s : {"xxIIx", "xxIxI", "Ixxxx", "IxxII", "xIxIx", "xIxxI", "IIIxx"}) {
        w.terms.push_back({-weight_x, detail::tilde_string(s)});
    }
    for (const char* s : {"IZyyZ", "yZyII", "yIIyZ"}) {
        w.terms.push_back({-weight_yz, detail::tilde_string(s)});
    }
    return w;
}

/// Same operator list with the weights as typeset (1/8, 1/4); kept for comparison only.
inline WitnessSpec witness_spec_as_printed() { return witness_spec(0.125, 0.25); }

inline double witness_value(const DensityMatrix& rho) {
    if (rho.qubits() != 5) {
        throw ArgumentError("witness is defined on 5 qubits");
    }
    return witness_spec().evaluate(rho);
}

inline constexpr double kIdealWitnessValue = -1.0;

// ---------------------------------------------------------------------------
// Fidelity decomposition

inline const std::vector<PauliString>& fidelity_terms() {
    static const std::vector<PauliString> terms = [] {
        std::vector<PauliString> out;
        for (const char* s :
             {"+IXXII", "-XXIXI", "-XIXXI", "-XXIIX", "-XIXIX", "+IIIXX", "+IXXXX", "+XYYYY", "+YZYII", "+YZYXX",
              "+YYZII", "+YYZXX", "-XZZYY", "-ZYYXI", "-ZYYIX", "-ZXIYY", "-ZIXYY", "+ZZZXI", "+ZZZIX", "+YIIZY",
              "+YXXZY", "+IZYZY", "+IYZZY", "+YIIYZ", "+YXXYZ", "+IZYYZ", "+IYZYZ", "-XYYZZ", "+XZZZZ", "+ZXIZZ",
              "+ZIXZZ"}) {
            out.push_back(PauliString::parse(s));
        }
        return out;
    }();
    return terms;
}

inline const std::vector<std::string>& fidelity_bases() {
    static const std::vector<std::string> bases = {"XXXXX", "YXXYZ", "YXXZY", "ZXXYY", "ZXXZZ", "XYYYY",
                                                   "XYYZZ", "ZYYXX", "YYZYZ", "XYZZY", "YYZXX", "YZYYZ",
                                                   "ZZYZY", "YZYXX", "XZZYY", "XZZZZ", "ZZZXX"};
    return bases;
}

/// True when every non-identity factor of p agrees with the basis letter.
inline bool basis_covers(std::string_view basis, const PauliString& p) {
    if (basis.size() != p.qubits()) {
        return false;
    }
    for (std::size_t q = 0; q < p.qubits(); ++q) {
        if (p[q] != Pauli::I && pauli_char(p[q]) != basis[q]) {
            return false;
        }
    }
    return true;
}

/// Index into fidelity_bases() of the first basis measuring p, or -1.
inline int basis_for_term(const PauliString& p) {
    const auto& b = fidelity_bases();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (basis_covers(b[i], p)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

struct TermValue {
    PauliString term;
    double value;  // signed expectation
};

struct FidelityBreakdown {
    double fidelity;
    std::vector<TermValue> per_term;
};

inline FidelityBreakdown fidelity_via_pauli_terms(const DensityMatrix& rho) {
    if (rho.qubits() != 5) {
        throw ArgumentError("fidelity decomposition is defined on 5 qubits");
    }
    FidelityBreakdown out{1.0, {}};
    for (const auto& t : fidelity_terms()) {
        const double v = expectation(rho, t);
        out.per_term.push_back({t, v});
        out.fidelity += v;
    }
    out.fidelity /= 32.0;
    return out;
}

}  // namespace gqss
