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
#include <limits>
#include <string>
#include <vector>

#include "gqss/cq_protocol.hpp"
#include "gqss/graph_state.hpp"
#include "gqss/noise.hpp"
#include "gqss/qq_protocol.hpp"
#include "gqss/session.hpp"

namespace gqss {

/// Seven signed checks on the dealer and a triplet. A check passes when the
/// product of the announced +-1 outcomes equals its sign.
struct TestSet {
    PlayerSet triplet;
    std::vector<PauliString> measurements;

    std::vector<int> accept_signs() const {
        std::vector<int> s;
        for (const auto& m : measurements) {
            s.push_back(m.sign());
        }
        return s;
    }

    /// The checks plus the identity, which is the "nobody measures" option.
    std::vector<PauliString> group_elements() const {
        auto g = measurements;
        g.push_back(PauliString::identity(5));
        return g;
    }
};

namespace detail {

inline std::vector<PauliString> base_checks() {
    std::vector<PauliString> out;
    for (const char* s : {"+ZZZXI", "+YYZII", "+YZYII", "-XXIXI", "-XIXXI", "+IXXII", "-ZYYXI"}) {
        out.push_back(PauliString::parse(s));
    }
    return out;
}

/// A relabeling of the players (dealer fixed) that preserves the resource edges
/// and maps {1,2,3} onto `triplet`.
inline std::array<std::size_t, 5> automorphism_to(const PlayerSet& triplet) {
    const GraphSpec g = resource_graph();
    std::array<std::size_t, 5> perm = {0, 1, 2, 3, 4};
    do {
        if (perm[0] != 0) {
            continue;
        }
        bool ok = true;
        for (auto [u, v] : g.edges()) {
            if (!g.adjacent(perm[u], perm[v])) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        PlayerSet img = {static_cast<int>(perm[1]), static_cast<int>(perm[2]), static_cast<int>(perm[3])};
        std::sort(img.begin(), img.end());
        if (img == triplet) {
            return perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw InternalError("no graph automorphism reaches triplet {" + players_string(triplet) + "}");
}

inline PauliString relabel(const PauliString& p, const std::array<std::size_t, 5>& perm) {
    std::vector<Pauli> f(5, Pauli::I);
    for (std::size_t q = 0; q < 5; ++q) {
        f[perm[q]] = p[q];
    }
    return PauliString(std::move(f), p.phase());
}

}  // namespace detail

/// Rank-2 projector on {0} u B (identity on the excluded player):
/// |g><g| + Z_N |g><g| Z_N with g the graph state of the induced subgraph and
/// Z_N acting on the excluded player's neighbours.
inline Matrix gamma_projector(PlayerSet triplet) {
    triplet = normalize_players(std::move(triplet));
    if (triplet.size() != 3) {
        throw ArgumentError("Gamma is defined for a triplet");
    }
    const GraphSpec g = resource_graph();
    std::size_t excluded = 0;
    for (std::size_t p = 1; p <= 4; ++p) {
        if (std::find(triplet.begin(), triplet.end(), static_cast<int>(p)) == triplet.end()) {
            excluded = p;
        }
    }
    std::vector<std::size_t> sub = {0};
    for (int p : triplet) {
        sub.push_back(static_cast<std::size_t>(p));
    }
    auto local = [&](std::size_t v) {
        return static_cast<std::size_t>(std::find(sub.begin(), sub.end(), v) - sub.begin());
    };
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        if (u != excluded && v != excluded) {
            edges.emplace_back(local(u), local(v));
        }
    }
    const StateVector gs = build_graph_state(GraphSpec(4, edges, 0));
    std::vector<Pauli> zf(4, Pauli::I);
    for (std::size_t w : g.neighbors(excluded)) {
        zf[local(w)] = Pauli::Z;
    }
    const StateVector gz = PauliString(zf).apply(gs);
    const Matrix g4 = gs.projector() + gz.projector();

    Matrix out(32, 32);
    auto sub_index = [&](std::size_t i) {
        std::size_t j = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            j = (j << 1) | detail::bit_of(i, sub[k], 5);
        }
        return j;
    };
    for (std::size_t i = 0; i < 32; ++i) {
        for (std::size_t j = 0; j < 32; ++j) {
            if (detail::bit_of(i, excluded, 5) == detail::bit_of(j, excluded, 5)) {
                out(i, j) = g4(sub_index(i), sub_index(j));
            }
        }
    }
    return out;
}

/// Uniform average over the eight group elements of (I + g)/2.
inline Matrix acceptance_operator(const TestSet& ts) {
    const auto group = ts.group_elements();
    Matrix m(32, 32);
    for (const auto& g : group) {
        m += (Matrix::identity(32) + g.to_matrix()) * Complex(0.5);
    }
    return m * Complex(1.0 / static_cast<double>(group.size()));
}

inline TestSet test_set(PlayerSet triplet) {
    triplet = normalize_players(std::move(triplet));
    if (triplet.size() != 3) {
        throw ArgumentError("test sets are defined for triplets");
    }
    const auto perm = detail::automorphism_to(triplet);
    TestSet ts{triplet, {}};
    for (const auto& m : detail::base_checks()) {
        ts.measurements.push_back(detail::relabel(m, perm));
    }
    const Matrix target = (Matrix::identity(32) + gamma_projector(triplet)) * Complex(0.5);
    if (max_abs_diff(acceptance_operator(ts), target) > 1e-10) {
        throw InternalError("relabeled test set for {" + players_string(triplet) + "} fails the Gamma identity");
    }
    return ts;
}

/// Tr(rho M_pass) = (1 + Tr(rho Gamma))/2
inline double pass_probability(const DensityMatrix& rho, const PlayerSet& triplet) {
    if (rho.qubits() != 5) {
        throw ArgumentError("pass probability is defined on 5 qubits");
    }
    const auto group = test_set(triplet).group_elements();
    double p = 0.0;
    for (const auto& g : group) {
        p += 0.5 * (1.0 + expectation(rho, g));
    }
    return p / static_cast<double>(group.size());
}

/// Closed form on v|Psi><Psi| + (1-v) I/32, with Tr(Gamma (x) I) = 4.
inline double white_noise_pass_probability(double v) { return 0.5 * (1.0 + v + (1.0 - v) / 8.0); }

inline double fidelity_lower_bound(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ArgumentError("pass probability must lie in [0, 1]");
    }
    return std::max(2.0 * p - 1.0, 0.0);
}

struct RetrievedFidelity {
    double average;  // over the six cardinal secrets
    double worst;
};

/// Helper-outcome-averaged fidelity of teleport-encoded secrets retrieved by the triplet.
inline RetrievedFidelity retrieved_fidelity(const DensityMatrix& resource, const PlayerSet& triplet) {
    RetrievedFidelity out{0.0, 1.0};
    for (const auto& s : cardinal_secrets()) {
        const double f = fidelity_pure(s.state(), qq_retrieve_average(triplet, encode_mixed(s, resource)));
        out.average += f / 6.0;
        out.worst = std::min(out.worst, f);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sessions

struct SqqConfig {
    double s = 0.5;
    std::size_t rounds = 1000;
    NoiseSpec noise = NoiseSpec::none();
    SecretQubit secret{};
    PlayerSet triplet{1, 2, 3};
    bool continue_on_fail = false;  // statistics mode, not the protocol

    nlohmann::json to_json() const {
        return {{"s", s},
                {"rounds", rounds},
                {"noise", noise.to_string()},
                {"secret", {secret.theta, secret.phi}},
                {"triplet", players_string(triplet)},
                {"continue_on_fail", continue_on_fail}};
    }
};

struct SqqOutcome {
    std::size_t rounds = 0;  // rounds actually run
    std::size_t tests_run = 0;
    std::size_t tests_passed = 0;
    std::size_t uses = 0;
    bool aborted = false;
    double empirical_P = 0.0;
    double fidelity_bound = 0.0;
    double mean_fidelity = 0.0;
    std::size_t instances = 0;
    std::size_t used_instances = 0;
    double p_cf = 0.0;
    ProtocolTranscript transcript;
};

namespace detail {

/// One test round: each party with a non-identity factor measures its qubit and
/// reports; the dealer reports +1 for an identity factor.
inline bool run_test_round(QuantumRegistry& reg, const PauliString& m, Rng& rng, MessageBus& bus) {
    int parity = 0;
    for (std::size_t q = 0; q < 5; ++q) {
        const int label = static_cast<int>(q);
        const PartyId who = reg.owner(label);
        if (m[q] == Pauli::I) {
            if (who == kDealer) {
                // the dealer's "no measurement" announces +1
            }
            continue;
        }
        const int o = reg.measure(who, label, m[q], rng);
        parity ^= o;
        if (who != kDealer) {
            bus.send(who, kDealer, MessageKind::ResultAnnouncement,
                     {{"basis", std::string(1, pauli_char(m[q]))}, {"outcome", o ? -1 : 1}});
        }
    }
    const int product = parity ? -1 : 1;
    return product == m.sign();
}

}  // namespace detail

/// Each round takes a fresh copy of the (noisy) resource. The dealer picks
/// test with probability s: a uniformly chosen group element is measured and
/// the session aborts on failure. Otherwise the secret is teleported in and the
/// triplet retrieves it.
inline SqqOutcome run_sqq_session(const SqqConfig& cfg, Rng& rng, std::uint64_t seed = 0) {
    if (!(cfg.s > 0.0 && cfg.s <= 1.0)) {
        throw ArgumentError("test probability s must lie in (0, 1]");
    }
    if (cfg.rounds == 0) {
        throw ArgumentError("rounds must be at least 1");
    }
    const TestSet ts = test_set(cfg.triplet);
    const auto group = ts.group_elements();
    const auto roles = triplet_roles(cfg.triplet);
    const DensityMatrix resource = session_resource(cfg.noise);
    const DensityMatrix with_secret = kron(cfg.secret.density(), resource);
    const StateVector target = cfg.secret.state();

    SqqOutcome out;
    out.transcript.protocol = ProtocolId::SQQ;
    out.transcript.seed = seed;
    out.transcript.session_id = make_session_id(ProtocolId::SQQ, seed);
    out.transcript.config = cfg.to_json();
    MessageBus bus;
    double fidelity_sum = 0.0;
    bool instance_open = false;

    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        bus.begin_round(r);
        ++out.rounds;
        if (!instance_open) {
            ++out.instances;
            instance_open = true;
        }
        const bool test = rng.bernoulli(cfg.s);
        if (test) {
            const std::size_t u = static_cast<std::size_t>(rng.below(group.size()));
            const PauliString& m = group[u];
            bus.send(kDealer, kBroadcast, MessageKind::TestOrUse, {{"choice", "test"}, {"measurement", m.to_string()}});
            auto reg = fresh_registry(resource, r);
            const bool pass = detail::run_test_round(reg, m, rng, bus);
            ++out.tests_run;
            out.tests_passed += pass;
            bus.send(kDealer, kBroadcast, MessageKind::PassFail, {{"pass", pass}});
            out.transcript.rounds.push_back({{"round", r},
                                             {"state_id", reg.state_id()},
                                             {"choice", "test"},
                                             {"measurement", m.to_string()},
                                             {"pass", pass}});
            if (!pass) {
                instance_open = false;
                if (!cfg.continue_on_fail) {
                    out.aborted = true;
                    bus.send(kDealer, kBroadcast, MessageKind::Abort, {{"round", r}});
                    break;
                }
            }
        } else {
            bus.send(kDealer, kBroadcast, MessageKind::TestOrUse, {{"choice", "use"}});
            QuantumRegistry reg(with_secret, {kSecretLabel, 0, 1, 2, 3, 4}, QuantumRegistry::standard_ownership(), r);
            const int k = reg.measure_bell(kDealer, kSecretLabel, 0, rng);
            bus.send(kDealer, kBroadcast, MessageKind::Correction, {{"bell_outcome", k}});
            for (const auto& c : teleport_corrections(k)) {
                for (int p = 1; p <= 4; ++p) {
                    if (c[static_cast<std::size_t>(p - 1)] != Pauli::I) {
                        reg.apply(p, p, pauli_matrix(c[static_cast<std::size_t>(p - 1)]));
                    }
                }
            }
            retrieve_in_registry(reg, roles, rng, &bus);
            const double f = fidelity_pure(target, reg.oracle_view({roles.designated}));
            fidelity_sum += f;
            ++out.uses;
            ++out.used_instances;
            instance_open = false;
            out.transcript.rounds.push_back(
                {{"round", r}, {"state_id", reg.state_id()}, {"choice", "use"}, {"fidelity", f}});
        }
    }
    if (instance_open) {
        --out.instances;  // unfinished at the end of the run
    }
    out.empirical_P = out.tests_run ? static_cast<double>(out.tests_passed) / static_cast<double>(out.tests_run) : 0.0;
    out.fidelity_bound = out.tests_run ? fidelity_lower_bound(out.empirical_P) : 0.0;
    out.mean_fidelity = out.uses ? fidelity_sum / static_cast<double>(out.uses) : 0.0;
    out.p_cf = out.instances ? static_cast<double>(out.used_instances) / static_cast<double>(out.instances) : 0.0;

    const double f = out.mean_fidelity;
    const double event_bound = f < 1.0 ? 2.0 * cfg.s / (1.0 - f * f) : std::numeric_limits<double>::infinity();
    const double form_bound = out.p_cf > 0.0 ? std::sqrt(std::max(0.0, 1.0 - 2.0 * cfg.s / out.p_cf)) : 0.0;
    out.transcript.messages = bus.take();
    out.transcript.metrics = {{"rounds", out.rounds},
                              {"tests_run", out.tests_run},
                              {"tests_passed", out.tests_passed},
                              {"uses", out.uses},
                              {"aborted", out.aborted},
                              {"statistics_mode", cfg.continue_on_fail},
                              {"empirical_p", out.empirical_P},
                              {"fidelity_bound", out.fidelity_bound},
                              {"mean_fidelity", out.mean_fidelity},
                              {"mean_fidelity_meets_bound", out.uses == 0 || f >= out.fidelity_bound - 0.01},
                              {"instances", out.instances},
                              {"p_cf", out.p_cf},
                              {"event_bound", std::isfinite(event_bound) ? nlohmann::json(event_bound) : nlohmann::json(nullptr)},
                              {"event_bound_holds", out.p_cf <= event_bound},
                              {"fidelity_form_bound", form_bound},
                              {"fidelity_form_holds", f >= form_bound}};
    return out;
}

}  // namespace gqss
