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

#include <string>
#include <utility>
#include <vector>

#include "gqss/graph_state.hpp"
#include "gqss/info_measures.hpp"
#include "gqss/measurement.hpp"
#include "gqss/noise.hpp"
#include "gqss/retrieval.hpp"
#include "gqss/session.hpp"

namespace gqss {

enum class DealerBasis { Z, Y, X, None };

inline Pauli to_pauli(DealerBasis b) {
    switch (b) {
        case DealerBasis::Z:
            return Pauli::Z;
        case DealerBasis::Y:
            return Pauli::Y;
        case DealerBasis::X:
            return Pauli::X;
        case DealerBasis::None:
            return Pauli::I;
    }
    return Pauli::I;
}

inline std::string basis_name(DealerBasis b) { return std::string(1, pauli_char(to_pauli(b))); }

struct DealerMeasurement {
    int outcome;
    StateVector players;  // qubits 1..4 as 0..3
};

/// Fixed-outcome dealer projection; probability 0 is an internal error.
inline DealerMeasurement dealer_branch(const StateVector& state, DealerBasis basis, int outcome) {
    if (state.qubits() != 5) {
        throw ArgumentError("dealer measurement expects the 5-qubit resource");
    }
    if (basis == DealerBasis::None) {
        throw ArgumentError("dealer must measure in a Pauli basis");
    }
    auto br = measurement_branch(state, 0, to_pauli(basis), outcome);
    if (br.probability == 0.0) {
        throw InternalError("dealer outcome has zero probability");
    }
    return {outcome, std::move(br.post)};
}

inline DealerMeasurement dealer_measure(const StateVector& state, DealerBasis basis, Rng& rng) {
    if (state.qubits() != 5) {
        throw ArgumentError("dealer measurement expects the 5-qubit resource");
    }
    if (basis == DealerBasis::None) {
        throw ArgumentError("dealer must measure in a Pauli basis");
    }
    auto m = measure(state, 0, to_pauli(basis), rng);
    return {m.outcome, std::move(m.post)};
}

/// {(p_i, rho_B^{i,j})} for the dealer's two outcomes in basis j.
inline ClassicalQuantumEnsemble ensemble_for(PlayerSet subset, DealerBasis basis, const DensityMatrix& state) {
    subset = normalize_players(std::move(subset));
    if (state.qubits() != 5) {
        throw ArgumentError("ensembles are defined on the 5-qubit resource");
    }
    if (basis == DealerBasis::None) {
        throw ArgumentError("dealer must measure in a Pauli basis");
    }
    std::vector<std::size_t> keep;
    for (int p : subset) {
        keep.push_back(static_cast<std::size_t>(p - 1));  // positions after qubit 0 is removed
    }
    std::vector<EnsembleItem> items;
    for (int i = 0; i < 2; ++i) {
        auto br = measurement_branch(state, 0, to_pauli(basis), i);
        if (br.probability == 0.0) {
            items.push_back({0.0, DensityMatrix::maximally_mixed(subset.size())});
        } else {
            items.push_back({br.probability, partial_trace(br.post, keep)});
        }
    }
    // Renormalize away rounding in the branch probabilities.
    const double total = items[0].probability + items[1].probability;
    for (auto& it : items) {
        it.probability /= total;
    }
    return ClassicalQuantumEnsemble(std::move(items));
}

enum class AccessClass { Authorized, Unauthorized, Partial };

inline std::string access_class_name(AccessClass c) {
    switch (c) {
        case AccessClass::Authorized:
            return "authorized";
        case AccessClass::Unauthorized:
            return "unauthorized";
        case AccessClass::Partial:
            return "partial";
    }
    return "?";
}

struct AccessVerdict {
    PlayerSet subset;
    double chi_z;
    double chi_y;
    AccessClass classification;
};

inline AccessClass classify(double chi_z, double chi_y, double tol) {
    if (std::min(chi_z, chi_y) >= 1.0 - tol) {
        return AccessClass::Authorized;
    }
    if (std::max(chi_z, chi_y) <= tol) {
        return AccessClass::Unauthorized;
    }
    return AccessClass::Partial;
}

/// The 15 nonempty subsets of {1,2,3,4}, by size then lexicographically.
inline std::vector<PlayerSet> all_player_subsets() {
    std::vector<PlayerSet> out;
    for (std::size_t size = 1; size <= 4; ++size) {
        for (unsigned mask = 1; mask < 16; ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) {
                continue;
            }
            PlayerSet s;
            for (int p = 1; p <= 4; ++p) {
                if (mask & (1u << (p - 1))) {
                    s.push_back(p);
                }
            }
            out.push_back(std::move(s));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const PlayerSet& a, const PlayerSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

inline std::vector<AccessVerdict> classify_access(const DensityMatrix& state, double tol = 1e-6) {
    std::vector<AccessVerdict> out;
    for (auto& s : all_player_subsets()) {
        const double cz = holevo_chi(ensemble_for(s, DealerBasis::Z, state));
        const double cy = holevo_chi(ensemble_for(s, DealerBasis::Y, state));
        out.push_back({s, cz, cy, classify(cz, cy, tol)});
    }
    return out;
}

/// p rho^{i xor 1, j} + (1-p) rho^{i, j} on both members of the ensemble.
inline ClassicalQuantumEnsemble qber_superoperator(const ClassicalQuantumEnsemble& e, double p) {
    if (e.items().size() != 2) {
        throw ArgumentError("QBER map acts on two-outcome ensembles");
    }
    const auto& a = e.items()[0];
    const auto& b = e.items()[1];
    auto mix = [p](const DensityMatrix& keep, const DensityMatrix& flip) {
        return DensityMatrix::normalized(keep.matrix() * Complex(1.0 - p) + flip.matrix() * Complex(p));
    };
    return ClassicalQuantumEnsemble({{a.probability, mix(a.state, b.state)}, {b.probability, mix(b.state, a.state)}});
}

inline constexpr double kQberSecurityBound = 0.11;

// ---------------------------------------------------------------------------
// Sessions

struct CqConfig {
    std::size_t rounds = 1000;
    PlayerSet triplet{1, 2, 4};
    NoiseSpec noise = NoiseSpec::none();  // qber-flip acts on the retrieved bit, other kinds on the resource

    nlohmann::json to_json() const {
        return {{"rounds", rounds}, {"triplet", players_string(triplet)}, {"noise", noise.to_string()}};
    }
};

struct CqResult {
    std::vector<int> dealer_key;
    std::vector<int> player_key;
    std::size_t same_basis_rounds = 0;
    std::size_t same_basis_errors = 0;
    std::size_t cross_basis_rounds = 0;
    std::size_t cross_basis_errors = 0;
    double qber_same_basis = 0.0;
    double qber_cross_basis = 0.0;
    ProtocolTranscript transcript;
};

/// Noisy (or ideal) joint resource used by every session round.
inline DensityMatrix session_resource(const NoiseSpec& noise) {
    DensityMatrix rho(canonical_resource().state);
    if (noise.kind == NoiseKind::QberFlip || noise.is_identity()) {
        return rho;
    }
    return apply_noise(rho, noise);
}

inline QuantumRegistry fresh_registry(const DensityMatrix& resource, std::uint64_t state_id) {
    return QuantumRegistry(resource, {0, 1, 2, 3, 4}, QuantumRegistry::standard_ownership(), state_id);
}

/// Per round: the dealer measures in a random basis j; the triplet runs
/// retrieval and the designated player measures in the shared guess j';
/// then j is announced and the round is sifted.
inline CqResult run_cq_session(const CqConfig& cfg, Rng& rng, std::uint64_t seed = 0) {
    if (cfg.rounds == 0) {
        throw ArgumentError("rounds must be at least 1");
    }
    const TripletRoles roles = triplet_roles(cfg.triplet);
    const DensityMatrix resource = session_resource(cfg.noise);
    MessageBus bus;
    CqResult res;
    res.transcript.protocol = ProtocolId::CQ;
    res.transcript.seed = seed;
    res.transcript.session_id = make_session_id(ProtocolId::CQ, seed);
    res.transcript.config = cfg.to_json();

    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        bus.begin_round(r);
        auto reg = fresh_registry(resource, r);
        const DealerBasis j = rng.bit() ? DealerBasis::Y : DealerBasis::Z;
        const int dealer_bit = reg.measure(kDealer, 0, to_pauli(j), rng);
        const DealerBasis guess = rng.bit() ? DealerBasis::Y : DealerBasis::Z;
        retrieve_in_registry(reg, roles, rng, &bus);
        const int o = reg.measure(roles.designated, roles.designated, to_pauli(guess), rng);
        // After correction the dealer/designated pair is (|00>+|11>)/sqrt2: Y outcomes anticorrelate.
        int player_bit = guess == DealerBasis::Y ? o ^ 1 : o;
        player_bit = apply_bit_noise(player_bit, cfg.noise, rng);

        bus.send(kDealer, kBroadcast, MessageKind::BasisAnnouncement, {{"basis", basis_name(j)}});
        const bool keep = guess == j;
        bus.send(roles.designated, kBroadcast, MessageKind::Sift, {{"guess", basis_name(guess)}, {"keep", keep}});

        const bool err = dealer_bit != player_bit;
        if (keep) {
            ++res.same_basis_rounds;
            res.same_basis_errors += err;
            res.dealer_key.push_back(dealer_bit);
            res.player_key.push_back(player_bit);
        } else {
            ++res.cross_basis_rounds;
            res.cross_basis_errors += err;
        }
        res.transcript.rounds.push_back({{"round", r},
                                         {"state_id", reg.state_id()},
                                         {"dealer_basis", basis_name(j)},
                                         {"guess", basis_name(guess)},
                                         {"kept", keep},
                                         {"dealer_bit", dealer_bit},
                                         {"player_bit", player_bit}});
    }
    auto ratio = [](std::size_t a, std::size_t b) { return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0; };
    res.qber_same_basis = ratio(res.same_basis_errors, res.same_basis_rounds);
    res.qber_cross_basis = ratio(res.cross_basis_errors, res.cross_basis_rounds);
    res.transcript.messages = bus.take();
    res.transcript.metrics = {{"rounds", cfg.rounds},
                              {"sifted_key_length", res.dealer_key.size()},
                              {"qber_same_basis", res.qber_same_basis},
                              {"qber_cross_basis", res.qber_cross_basis},
                              {"qber_bound", kQberSecurityBound},
                              {"below_bound", res.qber_same_basis < kQberSecurityBound}};
    return res;
}

}  // namespace gqss
