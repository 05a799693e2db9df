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

#include <cstdint>
#include <string>
#include <vector>

#include "gqss/cq_protocol.hpp"
#include "gqss/hybrid.hpp"
#include "gqss/qq_protocol.hpp"
#include "gqss/sqq_protocol.hpp"
#include "json.hpp"

namespace gqss {

struct QqConfig {
    std::size_t rounds = 100;
    PlayerSet triplet{1, 2, 4};
    NoiseSpec noise = NoiseSpec::none();
    SecretQubit secret{};

    nlohmann::json to_json() const {
        return {{"rounds", rounds},
                {"triplet", players_string(triplet)},
                {"noise", noise.to_string()},
                {"secret", {secret.theta, secret.phi}}};
    }
};

namespace detail {

/// Dealer teleports qubit kSecretLabel into the resource and announces the Bell
/// outcome; the players apply the logical corrections on their own qubits.
inline int teleport_in(QuantumRegistry& reg, Rng& rng, MessageBus& bus) {
    const int k = reg.measure_bell(kDealer, kSecretLabel, 0, rng);
    bus.send(kDealer, kBroadcast, MessageKind::Correction, {{"bell_outcome", k}});
    for (const auto& c : teleport_corrections(k)) {
        for (int p = 1; p <= 4; ++p) {
            const Pauli f = c[static_cast<std::size_t>(p - 1)];
            if (f != Pauli::I && reg.joint().holds(p)) {
                reg.apply(p, p, pauli_matrix(f));
            }
        }
    }
    return k;
}

inline QuantumRegistry secret_registry(const DensityMatrix& resource, const DensityMatrix& secret, std::uint64_t id) {
    return QuantumRegistry(kron(secret, resource), {kSecretLabel, 0, 1, 2, 3, 4},
                           QuantumRegistry::standard_ownership(), id);
}

inline ProtocolTranscript new_transcript(ProtocolId p, std::uint64_t seed, nlohmann::json config) {
    ProtocolTranscript t;
    t.protocol = p;
    t.seed = seed;
    t.session_id = make_session_id(p, seed);
    t.config = std::move(config);
    return t;
}

struct FidelityTally {
    double sum = 0.0;
    double min = 1.0;
    std::size_t n = 0;

    void add(double f) {
        sum += f;
        min = std::min(min, f);
        ++n;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
};

}  // namespace detail

/// Teleport-encode, distribute, retrieve on the triplet; fidelity against the known secret.
inline ProtocolTranscript run_qq_session(const QqConfig& cfg, Rng& rng, std::uint64_t seed = 0) {
    if (cfg.rounds == 0) {
        throw ArgumentError("rounds must be at least 1");
    }
    const auto roles = triplet_roles(cfg.triplet);
    const DensityMatrix resource = session_resource(cfg.noise);
    const DensityMatrix secret = cfg.secret.density();
    const StateVector target = cfg.secret.state();
    auto t = detail::new_transcript(ProtocolId::QQ, seed, cfg.to_json());
    MessageBus bus;
    detail::FidelityTally tally;
    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        bus.begin_round(r);
        auto reg = detail::secret_registry(resource, secret, r);
        const int k = detail::teleport_in(reg, rng, bus);
        const auto h = retrieve_in_registry(reg, roles, rng, &bus);
        const double f = fidelity_pure(target, reg.oracle_view({roles.designated}));
        tally.add(f);
        t.rounds.push_back({{"round", r}, {"state_id", reg.state_id()}, {"bell_outcome", k}, {"s_z", h.s_z},
                            {"s_x", h.s_x}, {"fidelity", f}});
    }
    t.messages = bus.take();
    t.metrics = {{"rounds", cfg.rounds},
                 {"designated", roles.designated},
                 {"mean_fidelity", tally.mean()},
                 {"min_fidelity", tally.min}};
    return t;
}

struct HybridConfig {
    std::size_t rounds = 1;
    PlayerSet triplet{1, 2, 4};
    NoiseSpec noise = NoiseSpec::none();
    SecretQubit secret{};
    std::size_t threshold = 3;

    nlohmann::json to_json() const {
        return {{"rounds", rounds},
                {"triplet", players_string(triplet)},
                {"noise", noise.to_string()},
                {"secret", {secret.theta, secret.phi}},
                {"threshold", threshold}};
    }
};

/// Per round the dealer pads the secret with X^x Z^z, sends each player one
/// GF(251) share of x and of z, and teleports the padded secret in. The triplet
/// pools the shares it received, retrieves, and removes the pad.
inline ProtocolTranscript run_hybrid_session(const HybridConfig& cfg, Rng& rng, std::uint64_t seed = 0) {
    if (cfg.rounds == 0) {
        throw ArgumentError("rounds must be at least 1");
    }
    const auto roles = triplet_roles(cfg.triplet);
    const DensityMatrix resource = session_resource(cfg.noise);
    const StateVector target = cfg.secret.state();
    auto t = detail::new_transcript(ProtocolId::Hybrid, seed, cfg.to_json());
    MessageBus bus;
    detail::FidelityTally tally;
    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        bus.begin_round(r);
        const PadBits pad{rng.bit(), rng.bit()};
        const ShareBundle xs = shamir_share(static_cast<std::uint32_t>(pad.x), cfg.threshold, 4, rng);
        const ShareBundle zs = shamir_share(static_cast<std::uint32_t>(pad.z), cfg.threshold, 4, rng);
        // What each player received, rebuilt from the wire bytes.
        std::map<int, std::pair<SharePoint, SharePoint>> inbox;
        for (int p = 1; p <= 4; ++p) {
            const auto wx = encode_share(xs.shares[static_cast<std::size_t>(p - 1)]);
            const auto wz = encode_share(zs.shares[static_cast<std::size_t>(p - 1)]);
            bus.send(kDealer, p, MessageKind::ShareDelivery, {{"pad_bit", "x"}, {"share", wx}});
            bus.send(kDealer, p, MessageKind::ShareDelivery, {{"pad_bit", "z"}, {"share", wz}});
            inbox[p] = {decode_share(wx), decode_share(wz)};
        }
        DensityMatrix padded = cfg.secret.density();
        if (pad.z) {
            padded = conjugate_local(padded, gates::Z(), 0);
        }
        if (pad.x) {
            padded = conjugate_local(padded, gates::X(), 0);
        }
        auto reg = detail::secret_registry(resource, padded, r);
        detail::teleport_in(reg, rng, bus);
        const auto h = retrieve_in_registry(reg, roles, rng, &bus);
        std::vector<SharePoint> px, pz;
        for (int p : {roles.designated, roles.z_helper, roles.x_helper}) {
            px.push_back(inbox[p].first);
            pz.push_back(inbox[p].second);
        }
        const PadBits rebuilt = reconstruct_pad(px, pz, cfg.threshold);
        if (rebuilt.x) {
            reg.apply(roles.designated, roles.designated, gates::X());
        }
        if (rebuilt.z) {
            reg.apply(roles.designated, roles.designated, gates::Z());
        }
        const double f = fidelity_pure(target, reg.oracle_view({roles.designated}));
        tally.add(f);
        t.rounds.push_back({{"round", r}, {"state_id", reg.state_id()}, {"pad", {pad.x, pad.z}},
                            {"s_z", h.s_z}, {"s_x", h.s_x}, {"fidelity", f}});
    }
    t.messages = bus.take();
    t.metrics = {{"rounds", cfg.rounds},
                 {"share_messages", t.count(MessageKind::ShareDelivery)},
                 {"mean_fidelity", tally.mean()},
                 {"min_fidelity", tally.min}};
    return t;
}

// ---------------------------------------------------------------------------
// Dispatch

namespace detail {

inline SecretQubit secret_from_json(const nlohmann::json& j) {
    if (j.is_array() && j.size() == 2) {
        return SecretQubit(j[0].get<double>(), j[1].get<double>());
    }
    throw ArgumentError("secret must be [theta, phi]");
}

inline PlayerSet players_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse_players(j.get<std::string>());
    }
    return normalize_players(j.get<PlayerSet>());
}

}  // namespace detail

/// Runs one session from a JSON config (keys as in each protocol's to_json()).
inline ProtocolTranscript run_session(ProtocolId protocol, const nlohmann::json& config, std::uint64_t seed) {
    Rng rng(seed);
    auto get_noise = [&]() {
        return config.contains("noise") ? NoiseSpec::parse(config["noise"].get<std::string>()) : NoiseSpec::none();
    };
    try {
        switch (protocol) {
            case ProtocolId::CQ: {
                CqConfig c;
                c.rounds = config.value("rounds", c.rounds);
                if (config.contains("triplet")) c.triplet = detail::players_from_json(config["triplet"]);
                c.noise = get_noise();
                return run_cq_session(c, rng, seed).transcript;
            }
            case ProtocolId::QQ: {
                QqConfig c;
                c.rounds = config.value("rounds", c.rounds);
                if (config.contains("triplet")) c.triplet = detail::players_from_json(config["triplet"]);
                if (config.contains("secret")) c.secret = detail::secret_from_json(config["secret"]);
                c.noise = get_noise();
                return run_qq_session(c, rng, seed);
            }
            case ProtocolId::Hybrid: {
                HybridConfig c;
                c.rounds = config.value("rounds", c.rounds);
                c.threshold = config.value("threshold", c.threshold);
                if (config.contains("triplet")) c.triplet = detail::players_from_json(config["triplet"]);
                if (config.contains("secret")) c.secret = detail::secret_from_json(config["secret"]);
                c.noise = get_noise();
                return run_hybrid_session(c, rng, seed);
            }
            case ProtocolId::SQQ: {
                SqqConfig c;
                c.rounds = config.value("rounds", c.rounds);
                c.s = config.value("s", c.s);
                c.continue_on_fail = config.value("continue_on_fail", c.continue_on_fail);
                if (config.contains("triplet")) c.triplet = detail::players_from_json(config["triplet"]);
                if (config.contains("secret")) c.secret = detail::secret_from_json(config["secret"]);
                c.noise = get_noise();
                return run_sqq_session(c, rng, seed).transcript;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("bad session config: ") + e.what());
    }
    throw InternalError("unhandled protocol");
}

/// {protocol, config, seed, metrics, transcript?}
inline nlohmann::json session_report(const ProtocolTranscript& t, bool include_transcript) {
    nlohmann::json j = {{"protocol", protocol_name(t.protocol)},
                        {"config", t.config},
                        {"seed", t.seed},
                        {"metrics", t.metrics}};
    if (include_transcript) {
        j["transcript"] = t.to_json();
    }
    return j;
}

inline bool session_aborted(const ProtocolTranscript& t) {
    return t.metrics.contains("aborted") && t.metrics["aborted"].get<bool>();
}

}  // namespace gqss
