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

#include <set>

#include "gqss/cq_protocol.hpp"
#include "gqss/info_measures.hpp"
#include "gqss/noise.hpp"
#include "testing.hpp"

namespace gqss {
namespace {

using testing::Engine;

const StateVector& ideal() {
    static const StateVector s = canonical_resource().state;
    return s;
}

TEST(Holevo, OrthogonalPairIsOneBit) {
    const ClassicalQuantumEnsemble e({{0.5, DensityMatrix(StateVector::basis(1, 0))},
                                      {0.5, DensityMatrix(StateVector::basis(1, 1))}});
    EXPECT_NEAR(holevo_chi(e), 1.0, 1e-12);
}

TEST(Holevo, IdenticalStatesCarryNothing) {
    Engine g(31);
    const auto rho = testing::random_density(2, g);
    EXPECT_NEAR(holevo_chi(ClassicalQuantumEnsemble({{0.3, rho}, {0.7, rho}})), 0.0, 1e-10);
}

TEST(Holevo, OppositePairDependsOnDealerBasis) {
    const DensityMatrix rho(ideal());
    EXPECT_NEAR(holevo_chi(ensemble_for({3, 4}, DealerBasis::Y, rho)), 1.0, 1e-9);
    EXPECT_NEAR(holevo_chi(ensemble_for({3, 4}, DealerBasis::Z, rho)), 0.0, 1e-9);
}

TEST(Holevo, RejectsBadEnsembles) {
    const auto m = DensityMatrix::maximally_mixed(1);
    EXPECT_THROW(ClassicalQuantumEnsemble({{0.5, m}, {0.6, m}}), ArgumentError);
    EXPECT_THROW(ClassicalQuantumEnsemble({{1.0, m}, {0.0, DensityMatrix::maximally_mixed(2)}}), ArgumentError);
    EXPECT_THROW(ClassicalQuantumEnsemble({}), ArgumentError);
}

TEST(HolevoProperty, EqualsMutualInformationOfClassicalQuantumState) {
    Engine g(32);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 2 + trial % 3;  // ensemble size, register of 2 qubits
        const std::size_t n = 1 + trial % 2;
        std::vector<double> p(k);
        double total = 0.0;
        for (auto& x : p) {
            x = testing::uniform(g, 0.05, 1.0);
            total += x;
        }
        std::vector<EnsembleItem> items;
        Matrix cq(4 << n, 4 << n);
        for (std::size_t i = 0; i < k; ++i) {
            p[i] /= total;
            const auto rho = testing::random_density(n, g);
            items.push_back({p[i], rho});
            cq += kron(StateVector::basis(2, i).projector(), rho.matrix()) * Complex(p[i]);
        }
        const DensityMatrix joint = DensityMatrix::normalized(cq);
        ASSERT_NEAR(holevo_chi(ClassicalQuantumEnsemble(items)), mutual_information(joint, {0, 1}), 1e-8);
    }
}

TEST(MutualInformation, Examples) {
    const double r = 1 / std::sqrt(2.0);
    EXPECT_NEAR(mutual_information(DensityMatrix(StateVector({r, 0, 0, r})), {0}), 2.0, 1e-10);
    Engine g(33);
    const auto prod = kron(testing::random_density(1, g), testing::random_density(2, g));
    EXPECT_NEAR(mutual_information(prod, {0}), 0.0, 1e-9);
    const DensityMatrix rho(ideal());
    for (std::size_t a = 1; a <= 4; ++a) {
        EXPECT_NEAR(mutual_information(partial_trace(rho, {0, a}), {0}), 0.0, 1e-8) << "player " << a;
    }
}

TEST(Witness, MaximallyMixedGivesConstant) {
    EXPECT_NEAR(witness_value(DensityMatrix::maximally_mixed(5)), 9.0 / 4.0, 1e-12);
}

TEST(Witness, IdealByOperatorEvaluation) {
    const Matrix w = witness_spec().to_matrix();
    const double brute = (w * ideal().projector()).trace().real();
    EXPECT_NEAR(brute, kIdealWitnessValue, 1e-12);
    EXPECT_NEAR(witness_value(DensityMatrix(ideal())), brute, 1e-12);
    EXPECT_LT(witness_value(DensityMatrix(ideal())), 0.0);
}

TEST(Witness, TermStructure) {
    const auto w = witness_spec();
    EXPECT_EQ(w.terms.size(), 10u);
    std::set<std::string> seen;
    for (const auto& t : w.terms) {
        EXPECT_TRUE(seen.insert(t.op.to_string()).second);
        // every term is a signed stabilizer element of the resource
        EXPECT_NEAR(std::abs(expectation(ideal(), t.op)), 1.0, 1e-12) << t.op.to_string();
    }
}

TEST(Witness, AsPrintedCoefficientsCannotGoNegative) {
    const auto e = hermitian_eig(witness_spec_as_printed().to_matrix());
    EXPECT_GT(e.values.back(), 0.5);
}

TEST(Witness, WhiteNoiseIsAffineInVisibility) {
    const double v = white_noise_visibility(0.70, 5);
    const double expect = 9.0 / 4.0 + v * (kIdealWitnessValue - 9.0 / 4.0);
    EXPECT_NEAR(witness_value(apply_noise(DensityMatrix(ideal()), NoiseSpec::white(v))), expect, 1e-12);
    EXPECT_NEAR(expect, 0.00645, 1e-5);
}

TEST(WitnessProperty, NonNegativeOnProductStates) {
    Engine g(34);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto psi = testing::random_product_state(5, g);
        ASSERT_GE(witness_value(DensityMatrix(psi)), -1e-9);
    }
}

TEST(Fidelity, IdealEveryTermPlusOne) {
    const auto b = fidelity_via_pauli_terms(DensityMatrix(ideal()));
    EXPECT_NEAR(b.fidelity, 1.0, 1e-12);
    ASSERT_EQ(b.per_term.size(), 31u);
    for (const auto& t : b.per_term) {
        EXPECT_NEAR(t.value, 1.0, 1e-12) << t.term.to_string();
    }
}

TEST(Fidelity, MaximallyMixed) {
    EXPECT_NEAR(fidelity_via_pauli_terms(DensityMatrix::maximally_mixed(5)).fidelity, 1.0 / 32, 1e-12);
}

TEST(Fidelity, BasesCoverEveryTerm) {
    const auto& bases = fidelity_bases();
    EXPECT_EQ(std::set<std::string>(bases.begin(), bases.end()).size(), 17u);
    for (const auto& t : fidelity_terms()) {
        const int k = basis_for_term(t);
        ASSERT_GE(k, 0) << t.to_string();
        EXPECT_TRUE(basis_covers(bases[static_cast<std::size_t>(k)], t));
    }
}

TEST(FidelityProperty, MatchesOverlap) {
    Engine g(35);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = trial % 2 ? testing::random_density(5, g) : DensityMatrix(testing::random_state(5, g));
        ASSERT_NEAR(fidelity_via_pauli_terms(rho).fidelity, fidelity_pure(ideal(), rho), 1e-9);
    }
}

TEST(Fidelity, WhiteNoiseModelMatchesReference) {
    const double v = white_noise_visibility(0.70, 5);
    EXPECT_NEAR(v, (0.70 - 1.0 / 32) / (1 - 1.0 / 32), 1e-15);
    EXPECT_NEAR(fidelity_via_pauli_terms(apply_noise(DensityMatrix(ideal()), NoiseSpec::white(v))).fidelity, 0.70,
                1e-6);
}

}  // namespace
}  // namespace gqss
