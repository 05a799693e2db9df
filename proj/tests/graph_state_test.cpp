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

#include <gtest/gtest.h>

#include <deque>
#include <map>

#include "gqss/graph_state.hpp"
#include "testing.hpp"

namespace gqss {
namespace {

using testing::Engine;
using testing::k0;
using testing::k1;
using testing::km;
using testing::kp;
using testing::ket;
using testing::sum;

// Independent oracle: |G> = 2^{-n/2} sum_x (-1)^{#edges inside x} |x>.
StateVector graph_oracle(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<Complex> a(std::size_t{1} << n);
    for (std::size_t x = 0; x < a.size(); ++x) {
        int parity = 0;
        for (auto [u, v] : edges) {
            parity ^= static_cast<int>(detail::bit_of(x, u, n) & detail::bit_of(x, v, n));
        }
        a[x] = parity ? -1.0 : 1.0;
    }
    return StateVector::normalized(std::move(a));
}

TEST(BuildGraphState, EmptyGraphIsPlusPlus) {
    EXPECT_LT(distance_up_to_phase(build_graph_state(GraphSpec(2, {})), ket({kp, kp})), 1e-12);
}

TEST(BuildGraphState, SingleEdge) {
    const auto expect = sum({{1.0, ket({k0, kp})}, {1.0, ket({k1, km})}});
    EXPECT_LT(distance_up_to_phase(build_graph_state(GraphSpec(2, {{0, 1}})), expect), 1e-12);
}

TEST(BuildGraphState, SquareOnPlayers) {
    const auto expect =
        sum({{1.0, ket({kp, kp, k0, k0})}, {1.0, ket({kp, kp, k1, k1})}, {1.0, ket({km, km, k0, k1})},
             {1.0, ket({km, km, k1, k0})}});
    const GraphSpec sq(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
    EXPECT_LT(distance_up_to_phase(build_graph_state(sq), expect), 1e-12);
    EXPECT_LT(distance_up_to_phase(square_state(), expect), 1e-12);
}

TEST(BuildGraphState, RejectsBadGraphs) {
    EXPECT_THROW(GraphSpec(7, {}), ArgumentError);
    EXPECT_THROW(GraphSpec(3, {{0, 0}}), ArgumentError);
    EXPECT_THROW(GraphSpec(3, {{0, 1}, {1, 0}}), ArgumentError);
    EXPECT_THROW(GraphSpec(3, {{0, 3}}), ArgumentError);
}

TEST(GraphSpecJson, RoundTrip) {
    const auto g = resource_graph();
    EXPECT_EQ(GraphSpec::from_json(g.to_json()), g);
    const auto parsed = GraphSpec::from_json(nlohmann::json::parse(R"({"n": 3, "edges": [[2, 1]], "dealer": 1})"));
    EXPECT_EQ(parsed.dealer(), 1u);
    EXPECT_TRUE(parsed.adjacent(1, 2));
}

TEST(BuildGraphStateProperty, MatchesOracleAndStabilizers) {
    Engine e(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 5;
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                if (e() & 1) {
                    edges.emplace_back(u, v);
                }
            }
        }
        const GraphSpec g(n, edges);
        const auto psi = build_graph_state(g);
        ASSERT_LT(distance_up_to_phase(psi, graph_oracle(n, edges)), 1e-12);
        for (const auto& s : stabilizer_generators(g)) {
            ASSERT_NEAR(expectation(psi, s), 1.0, 1e-10) << s.to_string();
        }
    }
}

TEST(Stabilizers, Examples) {
    const auto two = stabilizer_generators(GraphSpec(2, {{0, 1}}));
    EXPECT_EQ(two[0].to_string(), "+XZ");
    EXPECT_EQ(two[1].to_string(), "+ZX");
    EXPECT_EQ(stabilizer_generators(resource_graph())[0].to_string(), "+XZZZZ");
    EXPECT_EQ(stabilizer_generators(GraphSpec(3, {}))[0].to_string(), "+XII");
}

TEST(LocalComplement, SingleNeighbourIsUnchanged) {
    const GraphSpec g(2, {{0, 1}});
    EXPECT_EQ(local_complement(g, 0).new_graph, g);
}

TEST(LocalComplement, PathBecomesTriangle) {
    const auto rec = local_complement(GraphSpec(3, {{0, 1}, {1, 2}}), 1);
    EXPECT_EQ(rec.new_graph, GraphSpec(3, {{0, 1}, {1, 2}, {0, 2}}));
}

TEST(LocalComplementProperty, InvolutionAndStateEquivalence) {
    Engine e(22);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 4;
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                if (e() & 1) {
                    edges.emplace_back(u, v);
                }
            }
        }
        const GraphSpec g(n, edges);
        const std::size_t v = e() % n;
        const auto once = local_complement(g, v);
        ASSERT_EQ(local_complement(once.new_graph, v).new_graph, g);
        const auto mapped = apply_local_unitaries(build_graph_state(g), once.local_unitaries);
        ASSERT_LT(distance_up_to_phase(mapped, build_graph_state(once.new_graph)), 1e-10);
    }
}

TEST(LocalComplement, ChainReachesResource) {
    // Chain 1-2-0-3-4; breadth-first over complementation sequences of length <= 4.
    const GraphSpec chain(5, {{1, 2}, {2, 0}, {0, 3}, {3, 4}});
    const GraphSpec target = resource_graph();
    std::deque<std::pair<GraphSpec, std::vector<std::size_t>>> queue{{chain, {}}};
    std::optional<std::vector<std::size_t>> found;
    while (!queue.empty() && !found) {
        auto [g, seq] = queue.front();
        queue.pop_front();
        if (g == target) {
            found = seq;
            break;
        }
        if (seq.size() == 4) {
            continue;
        }
        for (std::size_t v = 0; v < 5; ++v) {
            auto next = seq;
            next.push_back(v);
            queue.emplace_back(local_complement(g, v).new_graph, std::move(next));
        }
    }
    ASSERT_TRUE(found.has_value());
    StateVector psi = build_graph_state(chain);
    GraphSpec g = chain;
    for (std::size_t v : *found) {
        const auto rec = local_complement(g, v);
        psi = apply_local_unitaries(psi, rec.local_unitaries);
        g = rec.new_graph;
    }
    EXPECT_LT(distance_up_to_phase(psi, canonical_resource().state), 1e-10);
}

TEST(Resource, EdgesAndStabilizers) {
    const auto res = canonical_resource();
    const std::vector<Edge> expect = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}};
    EXPECT_EQ(res.graph.edges(), expect);
    EXPECT_LT(distance_up_to_phase(res.state, graph_oracle(5, expect)), 1e-12);
    for (const auto& s : stabilizer_generators(res.graph)) {
        EXPECT_NEAR(expectation(res.state, s), 1.0, 1e-10);
    }
}

TEST(Resource, DealerZeroBranchComponent) {
    const auto psi = canonical_resource().state;
    const auto comp = ket({k0, kp, kp, k0, k0});
    EXPECT_NEAR(std::abs(comp.inner(psi)), 1.0 / (2 * std::sqrt(2.0)), 1e-12);
}

TEST(Resource, DealerBranchesAreSquareStates) {
    const auto psi = canonical_resource().state;
    std::vector<Complex> b0(psi.amplitudes().begin(), psi.amplitudes().begin() + 16);
    std::vector<Complex> b1(psi.amplitudes().begin() + 16, psi.amplitudes().end());
    EXPECT_LT(distance_up_to_phase(StateVector::normalized(b0), square_state()), 1e-12);
    EXPECT_LT(distance_up_to_phase(StateVector::normalized(b1), square_state_flipped()), 1e-12);
}

// The printed Z-basis expansion of the resource, branch |1>_0 with the printed
// signs and with the signs of Z1Z2Z3Z4 applied to the |0>_0 branch.
TEST(Resource, AlternativeExpansionSignPattern) {
    const auto psi = canonical_resource().state;
    auto expansion = [](std::array<double, 4> s) {
        return sum({{1.0, ket({k0, kp, kp, k0, k0})},
                    {1.0, ket({k0, kp, kp, k1, k1})},
                    {1.0, ket({k0, km, km, k0, k1})},
                    {1.0, ket({k0, km, km, k1, k0})},
                    {s[0], ket({k1, kp, kp, k0, k1})},
                    {s[1], ket({k1, kp, kp, k1, k0})},
                    {s[2], ket({k1, km, km, k0, k0})},
                    {s[3], ket({k1, km, km, k1, k1})}});
    };
    EXPECT_NEAR(std::abs(expansion({1, 1, -1, 1}).inner(psi)), 0.25, 1e-12);
    EXPECT_NEAR(std::abs(expansion({-1, -1, 1, 1}).inner(psi)), 1.0, 1e-12);
}

TEST(Resource, SquareSymmetry) {
    // swap players (1 2)(3 4)
    const auto psi = canonical_resource().state;
    EXPECT_LT(distance_up_to_phase(testing::permute_qubits(psi, {0, 2, 1, 4, 3}), psi), 1e-9);
}

TEST(LocalUnitaries, AreUnitary) {
    for (const auto& u : local_complement(resource_graph(), 0).local_unitaries) {
        EXPECT_LT(max_abs_diff(u.matrix * u.matrix.adjoint(), Matrix::identity(2)), 1e-15) << u.name;
    }
}

}  // namespace
}  // namespace gqss
