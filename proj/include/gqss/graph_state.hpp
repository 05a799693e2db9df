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
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gqss/linalg.hpp"
#include "json.hpp"

namespace gqss {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph whose vertices are the dealer and the players.
class GraphSpec {
   public:
    GraphSpec() = default;

    /// Players default to every non-dealer vertex in ascending order.
    GraphSpec(std::size_t n, std::vector<Edge> edges, std::size_t dealer = 0, std::vector<std::size_t> players = {})
        : n_(n), dealer_(dealer), players_(std::move(players)) {
        if (n_ == 0 || n_ > kMaxQubits) {
            throw ArgumentError("graph must have between 1 and 6 vertices");
        }
        if (dealer_ >= n_) {
            throw ArgumentError("dealer vertex out of range");
        }
        std::set<Edge> seen;
        for (auto [u, v] : edges) {
            if (u == v) {
                throw ArgumentError("self-loop on vertex " + std::to_string(u));
            }
            if (u >= n_ || v >= n_) {
                throw ArgumentError("edge endpoint out of range");
            }
            if (u > v) {
                std::swap(u, v);
            }
            if (!seen.insert({u, v}).second) {
                throw ArgumentError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
            }
        }
        edges_.assign(seen.begin(), seen.end());
        if (players_.empty()) {
            for (std::size_t v = 0; v < n_; ++v) {
                if (v != dealer_) {
                    players_.push_back(v);
                }
            }
        }
        std::set<std::size_t> roles(players_.begin(), players_.end());
        if (roles.size() != players_.size() || roles.count(dealer_) != 0 || roles.size() + 1 != n_) {
            throw ArgumentError("dealer and players must partition the vertex set");
        }
    }

    /// Parses {"n": int, "edges": [[u, v], ...], "dealer": int}.
    static GraphSpec from_json(const nlohmann::json& j) {
        try {
            std::vector<Edge> edges;
            for (const auto& e : j.at("edges")) {
                if (e.size() != 2) {
                    throw ArgumentError("edge entries must be [u, v] pairs");
                }
                edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
            }
            return GraphSpec(j.at("n").get<std::size_t>(), std::move(edges), j.value("dealer", std::size_t{0}));
        } catch (const nlohmann::json::exception& ex) {
            throw ArgumentError(std::string("malformed graph JSON: ") + ex.what());
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json edges = nlohmann::json::array();
        for (auto [u, v] : edges_) {
            edges.push_back({u, v});
        }
        return {{"n", n_}, {"edges", edges}, {"dealer", dealer_}};
    }

    std::size_t size() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t dealer() const { return dealer_; }
    const std::vector<std::size_t>& players() const { return players_; }

    bool adjacent(std::size_t u, std::size_t v) const {
        if (u > v) {
            std::swap(u, v);
        }
        return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
    }

    std::vector<std::size_t> neighbors(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < n_; ++w) {
            if (w != v && adjacent(v, w)) {
                out.push_back(w);
            }
        }
        return out;
    }

    friend bool operator==(const GraphSpec& a, const GraphSpec& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.dealer_ == b.dealer_;
    }

   private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::size_t dealer_ = 0;
    std::vector<std::size_t> players_;
};

/// prod_{(u,v) in E} CZ_uv |+>^n. Each basis amplitude is (-1)^{#edges with
/// both endpoints set} / sqrt(2^n).
inline StateVector build_graph_state(const GraphSpec& g) {
    const std::size_t n = g.size();
    const std::size_t dim = std::size_t{1} << n;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<Complex> a(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        int parity = 0;
        for (auto [u, v] : g.edges()) {
            parity ^= static_cast<int>(detail::bit_of(j, u, n) & detail::bit_of(j, v, n));
        }
        a[j] = parity ? -amp : amp;
    }
    return StateVector(std::move(a));
}

/// K_v = X_v prod_{w in N(v)} Z_w for every vertex v.
inline std::vector<PauliString> stabilizer_generators(const GraphSpec& g) {
    std::vector<PauliString> out;
    for (std::size_t v = 0; v < g.size(); ++v) {
        std::vector<Pauli> f(g.size(), Pauli::I);
        f[v] = Pauli::X;
        for (std::size_t w : g.neighbors(v)) {
            f[w] = Pauli::Z;
        }
        out.emplace_back(std::move(f));
    }
    return out;
}

struct LocalUnitary {
    std::size_t qubit;
    std::string name;  // "sqrt(-iX)" or "sqrt(iZ)"
    Matrix matrix;
};

struct LocalComplementationRecord {
    std::size_t vertex;
    GraphSpec new_graph;
    std::vector<LocalUnitary> local_unitaries;
};

namespace detail {

inline Matrix sqrt_minus_i_x() {
    const double r = 1.0 / std::sqrt(2.0);
    return Matrix{{r, Complex(0, -r)}, {Complex(0, -r), r}};
}

inline Matrix sqrt_i_z() {
    const double r = 1.0 / std::sqrt(2.0);
    return Matrix{{Complex(r, r), 0.0}, {0.0, Complex(r, -r)}};
}

}  // namespace detail

/// Toggles every edge inside N(v). The state-level counterpart is
/// sqrt(-iX) on v and sqrt(iZ) on each neighbour of v.
inline LocalComplementationRecord local_complement(const GraphSpec& g, std::size_t v) {
    if (v >= g.size()) {
        throw ArgumentError("local complementation vertex out of range");
    }
    const auto nb = g.neighbors(v);
    std::set<Edge> edges(g.edges().begin(), g.edges().end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
            const Edge e{nb[i], nb[j]};
            if (!edges.erase(e)) {
                edges.insert(e);
            }
        }
    }
    LocalComplementationRecord rec{v, GraphSpec(g.size(), {edges.begin(), edges.end()}, g.dealer(), g.players()), {}};
    rec.local_unitaries.push_back({v, "sqrt(-iX)", detail::sqrt_minus_i_x()});
    for (std::size_t w : nb) {
        rec.local_unitaries.push_back({w, "sqrt(iZ)", detail::sqrt_i_z()});
    }
    return rec;
}

inline StateVector apply_local_unitaries(const StateVector& psi, const std::vector<LocalUnitary>& ops) {
    std::vector<Complex> a(psi.amplitudes().begin(), psi.amplitudes().end());
    for (const auto& op : ops) {
        a = apply_local(a, op.matrix, op.qubit, psi.qubits());
    }
    return StateVector::normalized(std::move(a));
}

/// Dealer 0 joined to every player; players 1..4 on a square with
/// (1,2) and (3,4) the diagonally opposite pairs.
inline GraphSpec resource_graph() {
    return GraphSpec(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}, 0);
}

struct Resource {
    GraphSpec graph;
    StateVector state;
};

inline Resource canonical_resource() {
    auto g = resource_graph();
    auto s = build_graph_state(g);
    return {std::move(g), std::move(s)};
}

/// The four-player square graph state |phi> on qubits (1,2,3,4), indexed 0..3.
inline StateVector square_state() {
    return build_graph_state(GraphSpec(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}}, 0, {1, 2, 3}));
}

/// Z1 Z2 Z3 Z4 |phi>.
inline StateVector square_state_flipped() { return PauliString::parse("ZZZZ").apply(square_state()); }

}  // namespace gqss
