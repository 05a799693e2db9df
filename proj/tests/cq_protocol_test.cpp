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

#include "gqss/cq_protocol.hpp"
#include "testing.hpp"

namespace gqss {
namespace {

using testing::k0;
using testing::k1;
using testing::km;
using testing::kp;
using testing::ket;
using testing::sum;

const StateVector& ideal() {
    static const StateVector s = canonical_resource().state;
    return s;
}

const Matrix& mixed(std::size_t n) {
    static const std::array<Matrix, 3> m = {Matrix(), DensityMatrix::maximally_mixed(1).matrix(),
                                            DensityMatrix::maximally_mixed(2).matrix()};
    return m[n];
}

TEST(DealerMeasurement, ZZeroBranch) {
    const auto expect = sum({{1.0, ket({kp, kp, k0, k0})},
                             {1.0, ket({kp, kp, k1, k1})},
                             {1.0, ket({km, km, k0, k1})},
                             {1.0, ket({km, km, k1, k0})}});
    EXPECT_LT(distance_up_to_phase(dealer_branch(ideal(), DealerBasis::Z, 0).players, expect), 1e-12);
}

TEST(DealerMeasurement, YOutcomesEquallyLikely) {
    const auto p = outcome_probabilities(DensityMatrix(ideal()), "YZZZZ");
    double p0 = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        p0 += p[i];
    }
    EXPECT_NEAR(p0, 0.5, 1e-12);
}

TEST(DealerMeasurement, SinglePlayerSeesNothing) {
    for (int i = 0; i < 2; ++i) {
        const DensityMatrix players(dealer_branch(ideal(), DealerBasis::Z, i).players);
        EXPECT_LT(max_abs_diff(partial_trace(players, {0}).matrix(), mixed(1)), 1e-12);
    }
}

TEST(DealerMeasurement, RejectsIdentityBasis) {
    EXPECT_THROW(dealer_branch(ideal(), DealerBasis::None, 0), ArgumentError);
    Rng rng(1);
    EXPECT_THROW(dealer_measure(StateVector::basis(2, 0), DealerBasis::Z, rng), ArgumentError);
}

TEST(Ensemble, AdjacentPairIsMaximallyMixed) {
    const DensityMatrix rho(ideal());
    for (auto basis : {DealerBasis::Z, DealerBasis::Y}) {
        const auto e = ensemble_for({1, 4}, basis, rho);
        for (const auto& it : e.items()) {
            EXPECT_LT(max_abs_diff(it.state.matrix(), mixed(2)), 1e-12);
        }
    }
}

TEST(Ensemble, OppositePairInZ) {
    const StateVector pp({0.5, 0.5, 0.5, 0.5});
    const StateVector mm({0.5, -0.5, -0.5, 0.5});
    const Matrix expect = (pp.projector() + mm.projector()) * Complex(0.5);
    const auto e = ensemble_for({3, 4}, DealerBasis::Z, DensityMatrix(ideal()));
    for (const auto& it : e.items()) {
        EXPECT_LT(max_abs_diff(it.state.matrix(), expect), 1e-12);
    }
}

TEST(Ensemble, SinglePlayers) {
    for (int p = 1; p <= 4; ++p) {
        for (auto basis : {DealerBasis::Z, DealerBasis::Y}) {
            const auto e = ensemble_for({p}, basis, DensityMatrix(ideal()));
            for (const auto& it : e.items()) {
                EXPECT_LT(max_abs_diff(it.state.matrix(), mixed(1)), 1e-12);
            }
        }
    }
}

TEST(EnsembleProperty, NoSignalling) {
    const DensityMatrix rho(ideal());
    for (const auto& subset : all_player_subsets()) {
        std::vector<std::size_t> keep;
        for (int p : subset) {
            keep.push_back(static_cast<std::size_t>(p));
        }
        const Matrix unmeasured = partial_trace(rho, keep).matrix();
        for (auto basis : {DealerBasis::Z, DealerBasis::Y, DealerBasis::X}) {
            ASSERT_LT(max_abs_diff(ensemble_for(subset, basis, rho).average().matrix(), unmeasured), 1e-10)
                << players_string(subset);
        }
    }
}

TEST(Access, Examples) {
    const auto table = classify_access(DensityMatrix(ideal()));
    auto find = [&](const PlayerSet& s) {
        for (const auto& v : table) {
            if (v.subset == s) {
                return v;
            }
        }
        throw std::runtime_error("missing subset");
    };
    const auto single = find({2});
    EXPECT_EQ(single.classification, AccessClass::Unauthorized);
    EXPECT_NEAR(single.chi_z, 0.0, 1e-9);
    EXPECT_NEAR(single.chi_y, 0.0, 1e-9);
    const auto opposite = find({3, 4});
    EXPECT_EQ(opposite.classification, AccessClass::Partial);
    EXPECT_NEAR(opposite.chi_y, 1.0, 1e-9);
    EXPECT_EQ(find({1, 2, 4}).classification, AccessClass::Authorized);
}

TEST(Access, RampTable) {
    const auto table = classify_access(DensityMatrix(ideal()));
    ASSERT_EQ(table.size(), 15u);
    for (const auto& v : table) {
        const auto name = players_string(v.subset);
        if (v.subset.size() == 1 || (v.subset.size() == 2 && !is_opposite_pair(v.subset))) {
            EXPECT_EQ(v.classification, AccessClass::Unauthorized) << name;
            EXPECT_LE(v.chi_z, 1e-9) << name;
            EXPECT_LE(v.chi_y, 1e-9) << name;
        } else if (v.subset.size() == 2) {
            EXPECT_EQ(v.classification, AccessClass::Partial) << name;
            EXPECT_LE(v.chi_z, 1e-9) << name;
            EXPECT_NEAR(v.chi_y, 1.0, 1e-9) << name;
        } else {
            EXPECT_EQ(v.classification, AccessClass::Authorized) << name;
            EXPECT_NEAR(v.chi_z, 1.0, 1e-9) << name;
            EXPECT_NEAR(v.chi_y, 1.0, 1e-9) << name;
        }
    }
}

TEST(QberSuperoperator, HalfFlipErasesEverything) {
    const DensityMatrix rho(ideal());
    for (const auto& subset : all_player_subsets()) {
        for (auto basis : {DealerBasis::Z, DealerBasis::Y}) {
            const auto e = qber_superoperator(ensemble_for(subset, basis, rho), 0.5);
            ASSERT_NEAR(holevo_chi(e), 0.0, 1e-8) << players_string(subset);
        }
    }
}

TEST(QberSuperoperator, ZeroIsIdentity) {
    const auto e = ensemble_for({1, 2, 3}, DealerBasis::Y, DensityMatrix(ideal()));
    EXPECT_NEAR(holevo_chi(qber_superoperator(e, 0.0)), holevo_chi(e), 1e-12);
}

TEST(RetrievalProperty, DesignatedBitMatchesDealerOnEveryBranch) {
    int errors = 0, branches = 0;
    for (const auto& t : all_triplets()) {
        const auto roles = triplet_roles(t);
        for (auto basis : {DealerBasis::Z, DealerBasis::Y}) {
            for (int i = 0; i < 2; ++i) {
                const LabeledState base(DensityMatrix(dealer_branch(ideal(), basis, i).players), {1, 2, 3, 4});
                for (int s_z = 0; s_z < 2; ++s_z) {
                    for (int s_x = 0; s_x < 2; ++s_x) {
                        LabeledState st = base;
                        ASSERT_NEAR(retrieval_branch(st, roles, s_z, s_x), 0.25, 1e-12);
                        const int key = basis == DealerBasis::Y ? i ^ 1 : i;
                        const double p = st.project(roles.designated, to_pauli(basis), key);
                        errors += std::abs(p - 1.0) > 1e-9;
                        ++branches;
                    }
                }
            }
        }
    }
    EXPECT_EQ(branches, 64);
    EXPECT_EQ(errors, 0);
}

TEST(Roles, Table) {
    const auto r = triplet_roles({2, 3, 4});
    EXPECT_EQ(r.designated, 4);
    EXPECT_EQ(r.z_helper, 3);
    EXPECT_EQ(r.x_helper, 2);
    EXPECT_EQ(r.outsider, 1);
    EXPECT_EQ(triplet_roles({4, 2, 1}).designated, 1);
    EXPECT_EQ(triplet_roles({1, 2, 3}).designated, 2);
    EXPECT_EQ(triplet_roles({1, 3, 4}).designated, 3);
    EXPECT_THROW(triplet_roles({1, 2}), ArgumentError);
    EXPECT_THROW(parse_players("1,5"), ArgumentError);
}

TEST(Session, NoiselessQber) {
    Rng rng(7);
    const auto res = run_cq_session(CqConfig{10000, {1, 2, 4}, NoiseSpec::none()}, rng);
    EXPECT_EQ(res.qber_same_basis, 0.0);
    EXPECT_NEAR(res.qber_cross_basis, 0.5, 0.02);
    EXPECT_EQ(res.dealer_key, res.player_key);
    EXPECT_NEAR(static_cast<double>(res.same_basis_rounds) / 1e4, 0.5, 0.02);
}

TEST(Session, InjectedFlipNoise) {
    Rng rng(7);
    const auto res = run_cq_session(CqConfig{10000, {2, 3, 4}, NoiseSpec::parse("qber-flip:0.14")}, rng);
    EXPECT_NEAR(res.qber_same_basis, 0.14, 0.01);
    EXPECT_FALSE(res.transcript.metrics["below_bound"].get<bool>());
}

TEST(Session, EveryTripletWorks) {
    for (const auto& t : all_triplets()) {
        Rng rng(3);
        EXPECT_EQ(run_cq_session(CqConfig{200, t, NoiseSpec::none()}, rng).qber_same_basis, 0.0);
    }
}

TEST(Session, WhiteNoiseRaisesQber) {
    // After retrieval the dealer/designated pair carries visibility v, so QBER = (1 - v)/2.
    Rng rng(8);
    const auto res = run_cq_session(CqConfig{10000, {1, 2, 4}, NoiseSpec::white(0.8)}, rng);
    EXPECT_NEAR(res.qber_same_basis, 0.1, 0.015);
}

TEST(Session, RejectsZeroRounds) {
    Rng rng(1);
    EXPECT_THROW(run_cq_session(CqConfig{0, {1, 2, 4}, NoiseSpec::none()}, rng), ArgumentError);
}

}  // namespace
}  // namespace gqss
