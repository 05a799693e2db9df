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
#include <cctype>
#include <cstdio>
#include <cmath>
#include <functional>
#include <ostream>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "gqss/graph_state.hpp"
#include "gqss/info_measures.hpp"
#include "gqss/measurement.hpp"
#include "gqss/retrieval.hpp"

namespace gqss {

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
struct SecretQubit {
    double theta = 0.0;
    double phi = 0.0;

    SecretQubit() = default;
    SecretQubit(double t, double p) : theta(t), phi(p) {
        if (!(theta >= -1e-12 && theta <= std::numbers::pi + 1e-12) || !std::isfinite(phi)) {
            throw ArgumentError("secret needs theta in [0, pi] and finite phi");
        }
        phi = std::fmod(phi, 2 * std::numbers::pi);
        if (phi < 0) {
            phi += 2 * std::numbers::pi;
        }
    }

    static SecretQubit from_bloch(double x, double y, double z) {
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r < 1e-12) {
            throw ArgumentError("zero Bloch vector");
        }
        return SecretQubit(std::acos(std::clamp(z / r, -1.0, 1.0)), std::atan2(y, x));
    }

    Complex alpha() const { return std::cos(theta / 2); }
    Complex beta() const { return std::polar(std::sin(theta / 2), phi); }
    StateVector state() const { return StateVector::normalized({alpha(), beta()}); }
    DensityMatrix density() const { return DensityMatrix(state()); }
    std::array<double, 3> bloch() const {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    }
};

/// |0>, |1>, |+>, |->, |+y>, |-y>
inline const std::array<SecretQubit, 6>& cardinal_secrets() {
    static const std::array<SecretQubit, 6> s = {
        SecretQubit(0, 0),
        SecretQubit(std::numbers::pi, 0),
        SecretQubit(std::numbers::pi / 2, 0),
        SecretQubit(std::numbers::pi / 2, std::numbers::pi),
        SecretQubit(std::numbers::pi / 2, std::numbers::pi / 2),
        SecretQubit(std::numbers::pi / 2, 3 * std::numbers::pi / 2),
    };
    return s;
}

// Logical operators on the players' four qubits (player k is factor k-1).
inline PauliString logical_x() { return PauliString::parse("ZZZZ"); }
inline PauliString logical_z() { return PauliString::parse("ZZXI"); }

/// The dealer-conditioned square states: |phi> from dealer outcome |0>, |phi'> from |1>.
struct CodeWords {
    StateVector zero;
    StateVector one;
};

inline CodeWords code_words(const StateVector& resource) {
    if (resource.qubits() != 5) {
        throw ArgumentError("code words come from the 5-qubit resource");
    }
    const std::size_t q[1] = {0};
    const Complex k0[2] = {1.0, 0.0};
    const Complex k1[2] = {0.0, 1.0};
    return {StateVector::normalized(project_out(resource.amplitudes(), 5, q, k0)),
            StateVector::normalized(project_out(resource.amplitudes(), 5, q, k1))};
}

/// alpha|phi> + beta|phi'>
inline StateVector logical_encoding(const SecretQubit& s, const StateVector& resource) {
    const auto cw = code_words(resource);
    std::vector<Complex> a(16);
    for (std::size_t i = 0; i < 16; ++i) {
        a[i] = s.alpha() * cw.zero[i] + s.beta() * cw.one[i];
    }
    return StateVector::normalized(std::move(a));
}

namespace detail {

/// Secret on qubit 0 followed by the dealer's controlled-phase gates onto the square.
inline StateVector dealer_prepared(const SecretQubit& s, const StateVector& resource) {
    const auto cw = code_words(resource);
    std::vector<Complex> a(32);
    for (std::size_t i = 0; i < 16; ++i) {
        a[i] = s.alpha() * cw.zero[i];
        a[16 + i] = s.beta() * cw.one[i];
    }
    return StateVector::normalized(std::move(a));
}

}  // namespace detail

struct DirectEncoding {
    StateVector players;
    int s0;
};

/// Dealer's qubit re-prepared in the secret, X-measured; s0 = 1 is fixed by Z1Z2X3I4.
inline DirectEncoding qq_encode_direct_branch(const SecretQubit& s, const StateVector& resource, int s0) {
    auto br = measurement_branch(detail::dealer_prepared(s, resource), 0, Pauli::X, s0);
    if (br.probability == 0.0) {
        throw InternalError("X outcome on the dealer qubit has zero probability");
    }
    StateVector players = s0 ? logical_z().apply(br.post) : br.post;
    return {std::move(players), s0};
}

inline DirectEncoding qq_encode_direct(const SecretQubit& s, const StateVector& resource, Rng& rng) {
    auto m = measure(detail::dealer_prepared(s, resource), 0, Pauli::X, rng);
    StateVector players = m.outcome ? logical_z().apply(m.post) : m.post;
    return {std::move(players), m.outcome};
}

struct TeleportEncoding {
    StateVector players;
    int bell_outcome;  // (phase bit << 1) | parity bit
    double probability;
};

/// Corrections for a Bell outcome, applied by the players.
inline std::vector<PauliString> teleport_corrections(int bell_outcome) {
    std::vector<PauliString> out;
    if (bell_outcome & 1) {
        out.push_back(logical_x());
    }
    if (bell_outcome & 2) {
        out.push_back(logical_z());
    }
    return out;
}

/// Secret qubit (first factor) teleported into the resource through a Bell
/// projection on (secret, dealer qubit 0).
inline TeleportEncoding qq_encode_teleport_branch(const SecretQubit& s, const StateVector& resource,
                                                  int bell_outcome) {
    const StateVector joint = kron(s.state(), resource);
    const std::size_t q[2] = {0, 1};
    const auto bv = bell_vector(bell_outcome);
    auto out = project_out(joint.amplitudes(), 6, q, bv);
    double p = 0.0;
    for (const auto& a : out) {
        p += std::norm(a);
    }
    StateVector players = StateVector::normalized(std::move(out));
    for (const auto& c : teleport_corrections(bell_outcome)) {
        players = c.apply(players);
    }
    return {std::move(players), bell_outcome, p};
}

inline TeleportEncoding qq_encode_teleport(const SecretQubit& s, const StateVector& resource, Rng& rng) {
    std::array<double, 4> p{};
    for (int k = 0; k < 4; ++k) {
        p[k] = qq_encode_teleport_branch(s, resource, k).probability;
    }
    double u = rng.uniform() * (p[0] + p[1] + p[2] + p[3]);
    int k = 0;
    while (k < 3 && u >= p[k]) {
        u -= p[k];
        ++k;
    }
    return qq_encode_teleport_branch(s, resource, k);
}

/// Teleport-encoding into a possibly mixed resource, one Bell outcome.
/// Returns the outcome probability and the corrected players' state.
inline std::pair<double, DensityMatrix> encode_mixed_branch(const SecretQubit& s, const DensityMatrix& resource,
                                                            int bell_outcome) {
    if (resource.qubits() != 5) {
        throw ArgumentError("encoding expects the 5-qubit resource");
    }
    const DensityMatrix joint = kron(s.density(), resource);
    const std::size_t q[2] = {0, 1};
    const auto bv = bell_vector(bell_outcome);
    Matrix m = project_out(joint.matrix(), 6, q, bv);
    const double p = m.trace().real();
    if (p < 1e-14) {
        return {0.0, {}};
    }
    DensityMatrix players = DensityMatrix::normalized(std::move(m));
    for (const auto& c : teleport_corrections(bell_outcome)) {
        players = conjugate(players, c);
    }
    return {p, std::move(players)};
}

/// Outcome-averaged teleport encoding (equal to |enc><enc| on the ideal resource).
inline DensityMatrix encode_mixed(const SecretQubit& s, const DensityMatrix& resource) {
    Matrix acc(16, 16);
    for (int k = 0; k < 4; ++k) {
        auto [p, rho] = encode_mixed_branch(s, resource, k);
        if (p > 0.0) {
            acc += rho.matrix() * Complex(p);
        }
    }
    return DensityMatrix::normalized(std::move(acc));
}

// ---------------------------------------------------------------------------
// Retrieval

namespace detail {

inline LabeledState players_state(const DensityMatrix& rho4) {
    if (rho4.qubits() != 4) {
        throw ArgumentError("players' state must have 4 qubits");
    }
    return LabeledState(rho4, {1, 2, 3, 4});
}

}  // namespace detail

struct RetrievalBranch {
    double probability;
    DensityMatrix recovered;
};

inline RetrievalBranch qq_retrieve_branch(const PlayerSet& triplet, const DensityMatrix& encoded, int s_z, int s_x) {
    const auto roles = triplet_roles(triplet);
    auto st = detail::players_state(encoded);
    const double p = retrieval_branch(st, roles, s_z, s_x);
    if (p == 0.0) {
        return {0.0, {}};
    }
    return {p, st.reduced({roles.designated})};
}

inline DensityMatrix qq_retrieve(const PlayerSet& triplet, const DensityMatrix& encoded, Rng& rng) {
    const auto roles = triplet_roles(triplet);
    QuantumRegistry reg(encoded, {1, 2, 3, 4}, QuantumRegistry::standard_ownership());
    retrieve_in_registry(reg, roles, rng, nullptr);
    return reg.oracle_view({roles.designated});
}

inline DensityMatrix qq_retrieve(const PlayerSet& triplet, const StateVector& encoded, Rng& rng) {
    return qq_retrieve(triplet, DensityMatrix(encoded), rng);
}

/// Helper-outcome-averaged output of retrieval (the channel the triplet sees).
inline DensityMatrix qq_retrieve_average(const PlayerSet& triplet, const DensityMatrix& encoded) {
    Matrix acc(2, 2);
    for (int sz = 0; sz < 2; ++sz) {
        for (int sx = 0; sx < 2; ++sx) {
            auto br = qq_retrieve_branch(triplet, encoded, sz, sx);
            if (br.probability > 0.0) {
                acc += br.recovered.matrix() * Complex(br.probability);
            }
        }
    }
    return DensityMatrix::normalized(std::move(acc));
}

// ---------------------------------------------------------------------------
// Pair states

inline DensityMatrix pair_state_from(const DensityMatrix& players4, PlayerSet pair) {
    pair = normalize_players(std::move(pair));
    if (pair.size() != 2) {
        throw ArgumentError("expected a pair of players");
    }
    return partial_trace(players4, {static_cast<std::size_t>(pair[0] - 1), static_cast<std::size_t>(pair[1] - 1)});
}

inline DensityMatrix pair_reduced_state(const PlayerSet& pair, const SecretQubit& s) {
    return pair_state_from(DensityMatrix(logical_encoding(s, canonical_resource().state)), pair);
}

/// Closed forms, lower-numbered player first.
/// Adjacent (a in {1,2}, b in {3,4}), P = |psi><psi|:
///   1/4 (|+><+|_a (x) (XZ P ZX + Z P Z) + |-><-|_a (x) (X P X + P))
/// Opposite, A/B = (|++> +- |-->)/sqrt2:
///   1/2 (|A><A| + |B><B| + i sin(theta) sin(phi) (|A><B| - |B><A|))
inline DensityMatrix pair_closed_form(PlayerSet pair, const SecretQubit& s) {
    pair = normalize_players(std::move(pair));
    if (pair.size() != 2) {
        throw ArgumentError("expected a pair of players");
    }
    const double r = 1.0 / std::sqrt(2.0);
    if (is_opposite_pair(pair)) {
        const std::vector<Complex> pp = {0.5, 0.5, 0.5, 0.5};
        const std::vector<Complex> mm = {0.5, -0.5, -0.5, 0.5};
        std::vector<Complex> a(4), b(4);
        for (int i = 0; i < 4; ++i) {
            a[i] = r * (pp[i] + mm[i]);
            b[i] = r * (pp[i] - mm[i]);
        }
        const Complex c(0.0, std::sin(s.theta) * std::sin(s.phi));
        Matrix m = Matrix::outer(a, a) + Matrix::outer(b, b) + (Matrix::outer(a, b) - Matrix::outer(b, a)) * c;
        return DensityMatrix(m * Complex(0.5));
    }
    const Matrix P = s.density().matrix();
    const Matrix& X = gates::X();
    const Matrix& Z = gates::Z();
    const std::vector<Complex> plus = {r, r};
    const std::vector<Complex> minus = {r, -r};
    Matrix m = kron(Matrix::outer(plus, plus), X * Z * P * Z * X + Z * P * Z) +
               kron(Matrix::outer(minus, minus), X * P * X + P);
    return DensityMatrix(m * Complex(0.25));
}

/// Joint state of a reference qubit and some players when a maximally entangled
/// half is encoded as the secret: the dealer-side copy is qubit 0.
inline DensityMatrix dealer_pair_state(const DensityMatrix& resource, PlayerSet players) {
    players = normalize_players(std::move(players));
    std::vector<std::size_t> keep{0};
    for (int p : players) {
        keep.push_back(static_cast<std::size_t>(p));
    }
    return partial_trace(resource, keep);
}

// ---------------------------------------------------------------------------
// Channel tomography

/// Affine Bloch map r -> T r + t.
struct BlochChannel {
    std::array<std::array<double, 3>, 3> affine_matrix{};
    std::array<double, 3> translation{};

    std::array<double, 3> apply(const std::array<double, 3>& r) const {
        std::array<double, 3> out = translation;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                out[i] += affine_matrix[i][j] * r[j];
            }
        }
        return out;
    }

    double matrix_norm() const {
        double s = 0.0;
        for (const auto& row : affine_matrix) {
            for (double v : row) {
                s += v * v;
            }
        }
        return std::sqrt(s);
    }

    double translation_norm() const {
        return std::sqrt(translation[0] * translation[0] + translation[1] * translation[1] +
                         translation[2] * translation[2]);
    }

    static BlochChannel identity() {
        BlochChannel c;
        for (int i = 0; i < 3; ++i) {
            c.affine_matrix[i][i] = 1.0;
        }
        return c;
    }

    static BlochChannel completely_depolarizing() { return BlochChannel{}; }

    /// Normalized Choi state (1/2) sum_ij |i><j| (x) E(|i><j|).
    DensityMatrix choi() const {
        const std::array<Matrix, 3> sig = {gates::X(), gates::Y(), gates::Z()};
        auto image = [&](int k) {  // E(sigma_k)
            Matrix m(2, 2);
            for (int i = 0; i < 3; ++i) {
                m += sig[i] * Complex(affine_matrix[i][k]);
            }
            return m;
        };
        Matrix e_id = gates::I();
        for (int i = 0; i < 3; ++i) {
            e_id += sig[i] * Complex(translation[i]);
        }
        Matrix j(4, 4);
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                // |a><b| = (1/2)(delta_ab I + sum_k (sigma_k)_{ba} sigma_k)
                Matrix img = (a == b) ? e_id : Matrix(2, 2);
                for (int k = 0; k < 3; ++k) {
                    img += image(k) * sig[k](b, a);
                }
                img *= Complex(0.5);
                Matrix unit(2, 2);
                unit(a, b) = 1.0;
                j += kron(unit, img);
            }
        }
        return DensityMatrix::normalized(j * Complex(0.5));
    }
};

inline std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
    if (rho.qubits() != 1) {
        throw ArgumentError("Bloch vector needs a single qubit");
    }
    return {2 * rho(0, 1).real(), -2 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

inline DensityMatrix from_bloch(const std::array<double, 3>& r) {
    Matrix m = gates::I() + gates::X() * Complex(r[0]) + gates::Y() * Complex(r[1]) + gates::Z() * Complex(r[2]);
    return DensityMatrix::normalized(m);
}

/// Square root of a positive semidefinite Hermitian matrix.
inline Matrix psd_sqrt(const Matrix& h) {
    auto eig = hermitian_eig(h);
    const std::size_t d = h.rows();
    Matrix out(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const double s = std::sqrt(std::max(eig.values[k], 0.0));
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                out(r, c) += s * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
            }
        }
    }
    return out;
}

/// (Tr sqrt(sqrt(a) b sqrt(a)))^2
inline double uhlmann_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    const Matrix sa = psd_sqrt(a.matrix());
    Matrix m = sa * b.matrix() * sa;
    // symmetrize rounding before the eigensolver
    m = (m + m.adjoint()) * Complex(0.5);
    double t = 0.0;
    for (double v : hermitian_eig(m).values) {
        t += std::sqrt(std::max(v, 0.0));
    }
    return t * t;
}

using SecretChannel = std::function<DensityMatrix(const SecretQubit&)>;

struct ChannelReport {
    BlochChannel channel;
    double process_fidelity;
    double average_fidelity;
};

/// Affine map from the probes |0>, |1>, |+>, |+y>; fidelities against `ideal`.
inline ChannelReport channel_tomography(const SecretChannel& channel, const BlochChannel& ideal) {
    const double h = std::numbers::pi / 2;
    std::array<std::array<double, 3>, 4> out;
    const std::array<SecretQubit, 4> probes = {SecretQubit(0, 0), SecretQubit(std::numbers::pi, 0),
                                               SecretQubit(h, 0), SecretQubit(h, h)};
    for (int k = 0; k < 4; ++k) {
        const DensityMatrix rho = channel(probes[k]);
        if (rho.qubits() != 1 || rho.psd_violation() > 1e-9) {
            throw InternalError("probe produced an invalid single-qubit state");
        }
        out[k] = bloch_vector(rho);
    }
    BlochChannel c;
    for (int i = 0; i < 3; ++i) {
        c.translation[i] = 0.5 * (out[0][i] + out[1][i]);
        c.affine_matrix[i][2] = 0.5 * (out[0][i] - out[1][i]);
        c.affine_matrix[i][0] = out[2][i] - c.translation[i];
        c.affine_matrix[i][1] = out[3][i] - c.translation[i];
    }
    double avg = 0.0;
    for (const auto& s : cardinal_secrets()) {
        avg += uhlmann_fidelity(from_bloch(c.apply(s.bloch())), from_bloch(ideal.apply(s.bloch())));
    }
    return {c, uhlmann_fidelity(c.choi(), ideal.choi()), avg / 6.0};
}

/// Dealer-to-single-player map: the secret is encoded directly and the
/// player's qubit is what they hold.
inline SecretChannel single_player_channel(int player, const StateVector& resource) {
    if (player < 1 || player > 4) {
        throw ArgumentError("players are numbered 1..4");
    }
    return [player, resource](const SecretQubit& s) {
        return partial_trace(DensityMatrix(logical_encoding(s, resource)), {static_cast<std::size_t>(player - 1)});
    };
}

/// Triplet retrieval as a channel, averaged over helper outcomes.
inline SecretChannel triplet_channel(const PlayerSet& triplet, const DensityMatrix& resource) {
    return [triplet, resource](const SecretQubit& s) {
        return qq_retrieve_average(triplet, encode_mixed(s, resource));
    };
}

// ---------------------------------------------------------------------------
// Plane sweeps

enum class SweepPlane { ZY, ZX, XY };

inline SweepPlane parse_plane(std::string_view s) {
    std::string low(s);
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    if (low == "zy" || low == "z-y") return SweepPlane::ZY;
    if (low == "zx" || low == "z-x") return SweepPlane::ZX;
    if (low == "xy" || low == "x-y") return SweepPlane::XY;
    throw ArgumentError("plane must be zy, zx or xy");
}

inline std::string plane_name(SweepPlane p) {
    switch (p) {
        case SweepPlane::ZY:
            return "zy";
        case SweepPlane::ZX:
            return "zx";
        case SweepPlane::XY:
            return "xy";
    }
    return "?";
}

/// Secret at angle t around the great circle of the plane, starting at +Z (or +X for XY).
inline SecretQubit secret_on_plane(SweepPlane plane, double t) {
    switch (plane) {
        case SweepPlane::ZY:
            return SecretQubit::from_bloch(0.0, std::sin(t), std::cos(t));
        case SweepPlane::ZX:
            return SecretQubit::from_bloch(std::sin(t), 0.0, std::cos(t));
        case SweepPlane::XY:
            return SecretQubit::from_bloch(std::cos(t), std::sin(t), 0.0);
    }
    throw InternalError("unhandled plane");
}

struct NamedReference {
    std::string name;
    DensityMatrix state;
};

inline DensityMatrix two_qubit_pauli_state(std::initializer_list<std::pair<double, const char*>> terms) {
    Matrix m = Matrix::identity(4);
    for (const auto& [c, p] : terms) {
        m += PauliString::parse(p).to_matrix() * Complex(c);
    }
    return DensityMatrix(m * Complex(0.25));
}

/// The fixed comparison states for each pair class and plane.
inline std::vector<NamedReference> default_references(const PlayerSet& pair, SweepPlane plane) {
    if (!is_opposite_pair(normalize_players(pair))) {
        return {{"I/4", DensityMatrix::maximally_mixed(2)}};
    }
    if (plane == SweepPlane::ZX) {
        return {{"(I+XX)/4", two_qubit_pauli_state({{1.0, "XX"}})}};
    }
    return {{"(I+XX+ZY+YZ)/4", two_qubit_pauli_state({{1.0, "XX"}, {1.0, "ZY"}, {1.0, "YZ"}})},
            {"(I+XX-ZY-YZ)/4", two_qubit_pauli_state({{1.0, "XX"}, {-1.0, "ZY"}, {-1.0, "YZ"}})}};
}

/// Tr(rho sigma) / Tr(sigma^2); equals <s|rho|s> for a pure reference.
inline double normalized_overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return overlap(rho, sigma) / overlap(sigma, sigma);
}

using PairStateFn = std::function<DensityMatrix(const SecretQubit&)>;

struct SweepRow {
    double angle;
    std::vector<double> values;
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
};

/// `steps` angles 2 pi k / steps, k = 0..steps-1.
inline SweepTable plane_sweep(SweepPlane plane, std::size_t steps, const std::vector<NamedReference>& refs,
                              const PairStateFn& pair_state) {
    if (steps < 2) {
        throw ArgumentError("a sweep needs at least 2 steps");
    }
    SweepTable t;
    for (const auto& r : refs) {
        t.columns.push_back(r.name);
    }
    for (std::size_t k = 0; k < steps; ++k) {
        const double a = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(steps);
        const DensityMatrix rho = pair_state(secret_on_plane(plane, a));
        SweepRow row{a, {}};
        for (const auto& r : refs) {
            row.values.push_back(normalized_overlap(rho, r.state));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline SweepTable plane_sweep(const PlayerSet& pair, SweepPlane plane, std::size_t steps) {
    const auto resource = canonical_resource().state;
    return plane_sweep(plane, steps, default_references(pair, plane), [&](const SecretQubit& s) {
        return pair_state_from(DensityMatrix(logical_encoding(s, resource)), pair);
    });
}

inline void write_sweep_csv(std::ostream& os, const SweepTable& t) {
    os << "angle_radians";
    for (const auto& c : t.columns) {
        os << ',' << c;
    }
    os << '\n';
    char buf[64];
    for (const auto& r : t.rows) {
        std::snprintf(buf, sizeof buf, "%.12g", r.angle);
        os << buf;
        for (double v : r.values) {
            std::snprintf(buf, sizeof buf, "%.12g", v);
            os << ',' << buf;
        }
        os << '\n';
    }
}

}  // namespace gqss
