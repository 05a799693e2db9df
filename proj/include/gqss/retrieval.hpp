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
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gqss/linalg.hpp"
#include "gqss/session.hpp"

namespace gqss {

using PlayerSet = std::vector<int>;

/// Sorted, validated subset of players {1,2,3,4}.
inline PlayerSet normalize_players(PlayerSet s) {
    std::sort(s.begin(), s.end());
    if (s.empty()) {
        throw ArgumentError("player set is empty");
    }
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw ArgumentError("player set has duplicates");
    }
    for (int p : s) {
        if (p < 1 || p > 4) {
            throw ArgumentError("players are numbered 1..4, got " + std::to_string(p));
        }
    }
    return s;
}

/// "1,2,4" -> {1,2,4}
inline PlayerSet parse_players(std::string_view text) {
    PlayerSet out;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw ArgumentError("");
            }
        } catch (const std::exception&) {
            throw ArgumentError("bad player list '" + std::string(text) + "'");
        }
    }
    return normalize_players(std::move(out));
}

inline std::string players_string(const PlayerSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += (i ? "," : "") + std::to_string(s[i]);
    }
    return out;
}

/// (1,2) and (3,4) sit across the square; every other pair shares an edge.
inline bool is_opposite_pair(const PlayerSet& pair) {
    return pair.size() == 2 && ((pair[0] == 1 && pair[1] == 2) || (pair[0] == 3 && pair[1] == 4));
}

struct TripletRoles {
    int designated;  // ends up holding the secret
    int z_helper;
    int x_helper;
    int outsider;
};

inline TripletRoles triplet_roles(PlayerSet triplet) {
    triplet = normalize_players(std::move(triplet));
    if (triplet.size() != 3) {
        throw ArgumentError("expected a triplet of players, got {" + players_string(triplet) + "}");
    }
    static const std::array<std::pair<PlayerSet, TripletRoles>, 4> table = {{
        {{1, 2, 4}, {1, 2, 4, 3}},
        {{2, 3, 4}, {4, 3, 2, 1}},
        {{1, 2, 3}, {2, 1, 3, 4}},
        {{1, 3, 4}, {3, 4, 1, 2}},
    }};
    for (const auto& [set, roles] : table) {
        if (set == triplet) {
            return roles;
        }
    }
    throw InternalError("unreachable triplet");
}

inline const std::array<PlayerSet, 4>& all_triplets() {
    static const std::array<PlayerSet, 4> t = {{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
    return t;
}

/// X^{s_z} (XZ)^{s_x} Z on the designated qubit.
inline Matrix feedforward_correction(int s_z, int s_x) {
    Matrix c = gates::Z();
    if (s_x) {
        c = gates::X() * gates::Z() * c;
    }
    if (s_z) {
        c = gates::X() * c;
    }
    return c;
}

/// One branch of triplet retrieval on a labeled state: the outsider's qubit is
/// dropped, the helpers are projected onto the given outcomes and the designated
/// qubit is corrected. Returns the branch probability.
inline double retrieval_branch(LabeledState& st, const TripletRoles& r, int s_z, int s_x) {
    if (st.holds(r.outsider)) {
        st.discard(r.outsider);
    }
    double p = st.project(r.z_helper, Pauli::Z, s_z);
    if (p == 0.0) {
        return 0.0;
    }
    const double q = st.project(r.x_helper, Pauli::X, s_x);
    if (q == 0.0) {
        return 0.0;
    }
    st.apply(r.designated, feedforward_correction(s_z, s_x));
    return p * q;
}

struct HelperOutcomes {
    int s_z;
    int s_x;
};

/// Retrieval carried out by the parties themselves on a registry. Helpers
/// announce their outcomes to the designated player, who corrects.
inline HelperOutcomes retrieve_in_registry(QuantumRegistry& reg, const TripletRoles& r, Rng& rng, MessageBus* bus) {
    reg.discard(r.outsider, r.outsider);
    const int s_z = reg.measure(r.z_helper, r.z_helper, Pauli::Z, rng);
    const int s_x = reg.measure(r.x_helper, r.x_helper, Pauli::X, rng);
    if (bus) {
        bus->send(r.z_helper, r.designated, MessageKind::ResultAnnouncement, {{"basis", "Z"}, {"outcome", s_z}});
        bus->send(r.x_helper, r.designated, MessageKind::ResultAnnouncement, {{"basis", "X"}, {"outcome", s_x}});
    }
    reg.apply(r.designated, r.designated, feedforward_correction(s_z, s_x));
    return {s_z, s_x};
}

}  // namespace gqss
