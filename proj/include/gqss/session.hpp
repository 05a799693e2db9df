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
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gqss/linalg.hpp"
#include "gqss/measurement.hpp"
#include "gqss/random.hpp"
#include "json.hpp"

namespace gqss {

using PartyId = int;
inline constexpr PartyId kDealer = 0;
inline constexpr PartyId kBroadcast = -1;

/// Label of the dealer's secret input qubit; resource qubits use labels 0..4.
inline constexpr int kSecretLabel = 5;

inline std::string party_name(PartyId p) {
    if (p == kBroadcast) {
        return "all";
    }
    if (p == kDealer) {
        return "dealer";
    }
    return "player" + std::to_string(p);
}

/// Raised when a party touches a qubit it does not hold. Shipped protocols never trigger it.
struct LocalityViolation : InternalError {
    using InternalError::InternalError;
};

// ---------------------------------------------------------------------------
// Labeled joint state

/// A density matrix whose tensor factors carry stable labels. Measured or
/// discarded qubits are removed, so the matrix only ever spans live qubits.
class LabeledState {
   public:
    LabeledState() = default;
    LabeledState(DensityMatrix rho, std::vector<int> labels) : rho_(std::move(rho)), labels_(std::move(labels)) {
        if (labels_.size() != rho_.qubits()) {
            throw ArgumentError("one label per qubit required");
        }
        auto sorted = labels_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ArgumentError("duplicate qubit label");
        }
    }

    const DensityMatrix& state() const { return rho_; }
    const std::vector<int>& labels() const { return labels_; }
    bool holds(int label) const { return std::find(labels_.begin(), labels_.end(), label) != labels_.end(); }

    std::size_t position(int label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw ArgumentError("qubit " + std::to_string(label) + " is not live");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    void apply(int label, const Matrix& u) { rho_ = conjugate_local(rho_, u, position(label)); }

    /// Forces an outcome; returns its probability (0 leaves the state untouched).
    double project(int label, Pauli basis, int outcome) {
        if (labels_.size() == 1) {
            const double p = last_qubit_probability(label, basis, outcome);
            if (p > 0.0) {
                clear();
            }
            return p;
        }
        auto br = measurement_branch(rho_, position(label), basis, outcome);
        if (br.probability > 0.0) {
            commit(label, std::move(br.post));
        }
        return br.probability;
    }

    int measure(int label, Pauli basis, Rng& rng) {
        if (labels_.size() == 1) {
            const int outcome = rng.uniform() < last_qubit_probability(label, basis, 0) ? 0 : 1;
            clear();
            return outcome;
        }
        auto m = gqss::measure(rho_, position(label), basis, rng);
        commit(label, std::move(m.post));
        return m.outcome;
    }

    /// Bell measurement on (a, b); outcome indexes bell_vector().
    int measure_bell(int a, int b, Rng& rng) {
        const std::size_t q[2] = {position(a), position(b)};
        std::array<Matrix, 4> post;
        std::array<double, 4> p{};
        for (int k = 0; k < 4; ++k) {
            const auto w = bell_vector(k);
            post[k] = project_out(rho_.matrix(), rho_.qubits(), q, w);
            p[k] = std::max(post[k].trace().real(), 0.0);
        }
        double u = rng.uniform() * (p[0] + p[1] + p[2] + p[3]);
        int k = 0;
        while (k < 3 && (p[k] == 0.0 || u >= p[k])) {
            u -= p[k];
            ++k;
        }
        const std::size_t keep_a = q[0], keep_b = q[1];
        std::vector<int> rest;
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (i != keep_a && i != keep_b) {
                rest.push_back(labels_[i]);
            }
        }
        labels_ = std::move(rest);
        rho_ = DensityMatrix::normalized(std::move(post[k]));
        return k;
    }

    void discard(int label) {
        const std::size_t pos = position(label);
        std::vector<std::size_t> keep;
        for (std::size_t q = 0; q < labels_.size(); ++q) {
            if (q != pos) {
                keep.push_back(q);
            }
        }
        if (keep.empty()) {
            throw ArgumentError("cannot discard the last qubit");
        }
        commit(label, partial_trace(rho_, keep));
    }

    /// Reduced state on `want`, tensor factors in the given order.
    DensityMatrix reduced(const std::vector<int>& want) const {
        std::vector<std::size_t> pos;
        for (int l : want) {
            pos.push_back(position(l));
        }
        auto sorted = pos;
        std::sort(sorted.begin(), sorted.end());
        DensityMatrix r = partial_trace(rho_, sorted);
        if (sorted == pos) {
            return r;
        }
        // reorder: factor i of the output is factor rank(pos[i]) of r
        std::vector<std::size_t> src;
        for (auto p : pos) {
            src.push_back(static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), p) - sorted.begin()));
        }
        const std::size_t k = want.size();
        const std::size_t d = std::size_t{1} << k;
        auto map_index = [&](std::size_t i) {
            std::size_t j = 0;
            for (std::size_t q = 0; q < k; ++q) {
                if (detail::bit_of(i, q, k)) {
                    j |= std::size_t{1} << (k - 1 - src[q]);
                }
            }
            return j;
        };
        Matrix m(d, d);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                m(a, b) = r(map_index(a), map_index(b));
            }
        }
        return DensityMatrix(std::move(m));
    }

   private:
    double last_qubit_probability(int label, Pauli basis, int outcome) const {
        position(label);
        const auto v = pauli_eigenvector(basis, outcome);
        Complex s = 0.0;
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                s += std::conj(v[r]) * rho_(r, c) * v[c];
            }
        }
        return std::clamp(s.real(), 0.0, 1.0);
    }

    void clear() {
        labels_.clear();
        rho_ = DensityMatrix();
    }

    void commit(int label, DensityMatrix post) {
        labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(position(label)));
        rho_ = std::move(post);
    }

    DensityMatrix rho_;
    std::vector<int> labels_;
};

/// Joint state of one round plus who holds which qubit. Every party-facing
/// call names the acting party and is refused for qubits it does not own.
class QuantumRegistry {
   public:
    QuantumRegistry(DensityMatrix joint, std::vector<int> labels, std::map<int, PartyId> owners,
                    std::uint64_t state_id = 0)
        : joint_(std::move(joint), std::move(labels)), owners_(std::move(owners)), state_id_(state_id) {
        for (int l : joint_.labels()) {
            if (!owners_.count(l)) {
                throw ArgumentError("qubit " + std::to_string(l) + " has no owner");
            }
        }
    }

    /// Dealer holds qubit 0 and the secret; player k holds qubit k.
    static std::map<int, PartyId> standard_ownership() {
        return {{0, kDealer}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {kSecretLabel, kDealer}};
    }

    std::uint64_t state_id() const { return state_id_; }
    PartyId owner(int label) const { return owners_.at(label); }

    int measure(PartyId who, int label, Pauli basis, Rng& rng) {
        check(who, label);
        return joint_.measure(label, basis, rng);
    }

    double project(PartyId who, int label, Pauli basis, int outcome) {
        check(who, label);
        return joint_.project(label, basis, outcome);
    }

    void apply(PartyId who, int label, const Matrix& u) {
        check(who, label);
        joint_.apply(label, u);
    }

    int measure_bell(PartyId who, int a, int b, Rng& rng) {
        check(who, a);
        check(who, b);
        return joint_.measure_bell(a, b, rng);
    }

    void discard(PartyId who, int label) {
        check(who, label);
        joint_.discard(label);
    }

    /// Simulator-side view used for scoring; not a party operation.
    DensityMatrix oracle_view(const std::vector<int>& labels) const { return joint_.reduced(labels); }
    const LabeledState& joint() const { return joint_; }
    LabeledState& joint_for_oracle() { return joint_; }

   private:
    void check(PartyId who, int label) const {
        auto it = owners_.find(label);
        if (it == owners_.end() || !joint_.holds(label)) {
            throw LocalityViolation(party_name(who) + " requested qubit " + std::to_string(label) +
                                    ", which is not live");
        }
        if (it->second != who) {
            throw LocalityViolation(party_name(who) + " requested qubit " + std::to_string(label) + " owned by " +
                                    party_name(it->second));
        }
    }

    LabeledState joint_;
    std::map<int, PartyId> owners_;
    std::uint64_t state_id_;
};

// ---------------------------------------------------------------------------
// Messages and transcripts

enum class MessageKind { BasisAnnouncement, ResultAnnouncement, TestOrUse, Sift, Correction, ShareDelivery, PassFail, Abort };

inline std::string message_kind_name(MessageKind k) {
    switch (k) {
        case MessageKind::BasisAnnouncement:
            return "basis-announcement";
        case MessageKind::ResultAnnouncement:
            return "result-announcement";
        case MessageKind::TestOrUse:
            return "test-or-use";
        case MessageKind::Sift:
            return "sift";
        case MessageKind::Correction:
            return "correction";
        case MessageKind::ShareDelivery:
            return "share-delivery";
        case MessageKind::PassFail:
            return "pass-fail";
        case MessageKind::Abort:
            return "abort";
    }
    return "?";
}

struct Message {
    std::uint64_t seq;
    std::uint64_t round;
    PartyId from;
    PartyId to;
    MessageKind kind;
    nlohmann::json payload;
};

inline nlohmann::json to_json(const Message& m) {
    return {{"seq", m.seq},
            {"round", m.round},
            {"from", party_name(m.from)},
            {"to", party_name(m.to)},
            {"kind", message_kind_name(m.kind)},
            {"payload", m.payload}};
}

/// In-process authenticated, lossless classical channel. Logs every message once.
class MessageBus {
   public:
    const Message& send(PartyId from, PartyId to, MessageKind kind, nlohmann::json payload) {
        log_.push_back({next_seq_++, round_, from, to, kind, std::move(payload)});
        return log_.back();
    }

    void begin_round(std::uint64_t round) { round_ = round; }
    const std::vector<Message>& log() const { return log_; }
    std::vector<Message> take() { return std::move(log_); }

    std::size_t count(MessageKind kind) const {
        return static_cast<std::size_t>(
            std::count_if(log_.begin(), log_.end(), [kind](const Message& m) { return m.kind == kind; }));
    }

   private:
    std::vector<Message> log_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t round_ = 0;
};

enum class ProtocolId { CQ, QQ, Hybrid, SQQ };

inline std::string protocol_name(ProtocolId p) {
    switch (p) {
        case ProtocolId::CQ:
            return "CQ";
        case ProtocolId::QQ:
            return "QQ";
        case ProtocolId::Hybrid:
            return "HYBRID";
        case ProtocolId::SQQ:
            return "SQQ";
    }
    return "?";
}

inline ProtocolId parse_protocol(std::string_view s) {
    std::string up(s);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "CQ") return ProtocolId::CQ;
    if (up == "QQ") return ProtocolId::QQ;
    if (up == "HYBRID") return ProtocolId::Hybrid;
    if (up == "SQQ") return ProtocolId::SQQ;
    throw ArgumentError("unknown protocol '" + std::string(s) + "'");
}

struct ProtocolTranscript {
    std::string session_id;
    ProtocolId protocol = ProtocolId::CQ;
    std::uint64_t seed = 0;
    nlohmann::json config = nlohmann::json::object();
    std::vector<Message> messages;
    nlohmann::json rounds = nlohmann::json::array();
    nlohmann::json metrics = nlohmann::json::object();

    std::size_t count(MessageKind kind) const {
        return static_cast<std::size_t>(
            std::count_if(messages.begin(), messages.end(), [kind](const Message& m) { return m.kind == kind; }));
    }

    nlohmann::json to_json() const {
        nlohmann::json msgs = nlohmann::json::array();
        for (const auto& m : messages) {
            msgs.push_back(gqss::to_json(m));
        }
        return {{"session_id", session_id}, {"protocol", protocol_name(protocol)},
                {"seed", seed},             {"config", config},
                {"messages", msgs},         {"rounds", rounds},
                {"metrics", metrics}};
    }
};

inline std::string make_session_id(ProtocolId p, std::uint64_t seed) {
    std::string s = protocol_name(p);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s + "-" + std::to_string(seed);
}

}  // namespace gqss
