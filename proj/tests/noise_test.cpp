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

#include <sstream>

#include "gqss/graph_state.hpp"
#include "gqss/info_measures.hpp"
#include "gqss/noise.hpp"
#include "testing.hpp"

namespace gqss {
namespace {

using testing::Engine;

const DensityMatrix& ideal() {
    static const DensityMatrix rho(canonical_resource().state);
    return rho;
}

TEST(NoiseSpec, Parse) {
    const auto w = NoiseSpec::parse("white:0.6903");
    EXPECT_EQ(w.kind, NoiseKind::White);
    EXPECT_DOUBLE_EQ(w.parameter, 0.6903);
    const auto d = NoiseSpec::parse("depolarizing:0.05@1,3");
    EXPECT_EQ(d.kind, NoiseKind::DepolarizingPerQubit);
    EXPECT_EQ(d.targets, (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(NoiseSpec::parse("flip:0.14").kind, NoiseKind::QberFlip);
    EXPECT_EQ(NoiseSpec::parse(d.to_string()).targets, d.targets);
    for (const char* bad : {"white", "white:1.5", "pink:0.1", "white:0.5@1", "depol:x", "depol:0.1@a"}) {
        EXPECT_THROW(NoiseSpec::parse(bad), ArgumentError) << bad;
    }
}

TEST(WhiteNoise, Endpoints) {
    Engine g(41);
    const auto rho = testing::random_density(3, g);
    EXPECT_LT(max_abs_diff(apply_noise(rho, NoiseSpec::white(1.0)).matrix(), rho.matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(apply_noise(rho, NoiseSpec::white(0.0)).matrix(),
                           DensityMatrix::maximally_mixed(3).matrix()),
              1e-15);
}

TEST(WhiteNoise, FidelityLaw) {
    for (double v : {0.0, 0.1, 0.5, 0.6903, 0.99, 1.0}) {
        EXPECT_NEAR(fidelity_pure(canonical_resource().state, apply_noise(ideal(), NoiseSpec::white(v))),
                    v + (1 - v) / 32, 1e-10);
    }
}

TEST(WhiteNoise, ReferenceModel) {
    const double v = white_noise_visibility(0.70, 5);
    EXPECT_NEAR(v, 0.6903, 1e-4);
    EXPECT_NEAR(fidelity_via_pauli_terms(apply_noise(ideal(), NoiseSpec::white(v))).fidelity, 0.70, 1e-6);
}

TEST(Depolarizing, FullStrengthReplacesQubit) {
    Engine g(42);
    const auto rho = testing::random_density(3, g);
    const auto out = apply_noise(rho, NoiseSpec(NoiseKind::DepolarizingPerQubit, 1.0, {1}));
    const auto expect = partial_trace(rho, {0, 2});
    // qubit 1 becomes I/2, the others keep their joint state
    EXPECT_LT(max_abs_diff(partial_trace(out, {0, 2}).matrix(), expect.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(out, {1}).matrix(), DensityMatrix::maximally_mixed(1).matrix()), 1e-12);
    EXPECT_NEAR(mutual_information(out, {1}), 0.0, 1e-8);
}

TEST(QberFlip, FlipsDiagonal) {
    const auto out = apply_noise(DensityMatrix(StateVector::basis(1, 0)), NoiseSpec(NoiseKind::QberFlip, 0.14));
    EXPECT_NEAR(out(1, 1).real(), 0.14, 1e-15);
}

TEST(NoiseProperty, PreservesStates) {
    Engine g(43);
    const std::vector<NoiseSpec> kinds = {NoiseSpec::white(0.3), NoiseSpec(NoiseKind::DepolarizingPerQubit, 0.2),
                                          NoiseSpec(NoiseKind::QberFlip, 0.4, {0})};
    for (const auto& k : kinds) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto rho = testing::random_density(1 + trial % 3, g);
            const auto out = apply_noise(rho, k);
            ASSERT_LT(out.matrix().hermiticity_error(), 1e-12);
            ASSERT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
            ASSERT_LT(out.psd_violation(), 1e-12);
        }
    }
}

TEST(BitNoise, FlipRate) {
    Rng rng(44);
    const auto spec = NoiseSpec::parse("qber-flip:0.14");
    int flips = 0;
    for (int i = 0; i < 100000; ++i) {
        flips += apply_bit_noise(0, spec, rng);
    }
    EXPECT_NEAR(flips / 1e5, 0.14, 0.005);
    EXPECT_EQ(apply_bit_noise(1, NoiseSpec::white(0.5), rng), 1);
}

TEST(Sampling, ZeroStateIsDeterministic) {
    Rng rng(45);
    const auto rec = sample_counts(DensityMatrix(StateVector::basis(1, 0)), "Z", 100, rng);
    EXPECT_EQ(rec.shots, 100u);
    ASSERT_EQ(rec.counts.size(), 1u);
    EXPECT_EQ(rec.counts.at("0"), 100u);
}

TEST(Sampling, BornRuleOnPlus) {
    Rng rng(46);
    const double r = 1 / std::sqrt(2.0);
    const auto rec = sample_counts(DensityMatrix(StateVector({r, r})), "Z", 100000, rng);
    EXPECT_NEAR(static_cast<double>(rec.counts.at("0")) / 1e5, 0.5, 0.005);
}

TEST(Sampling, ResourceXXXXX) {
    Rng rng(47);
    const auto term = PauliString::parse("XXXXX");
    const auto rec = sample_counts(ideal(), "XXXXX", 100000, rng);
    EXPECT_NEAR(*expectation_from_counts(rec, term), expectation(ideal(), term), 0.01);
}

TEST(Sampling, YBasisSigns) {
    Rng rng(48);
    const double r = 1 / std::sqrt(2.0);
    const DensityMatrix plus_y(StateVector({r, Complex(0, r)}));
    const auto rec = sample_counts(plus_y, "Y", 1000, rng);
    EXPECT_EQ(rec.counts.at("0"), 1000u);
    EXPECT_DOUBLE_EQ(*expectation_from_counts(rec, PauliString::parse("-Y")), -1.0);
    EXPECT_THROW(expectation_from_counts(rec, PauliString::parse("X")), ArgumentError);
}

TEST(MonteCarlo, PoissonScaling) {
    // Exact probabilities of a single-basis expectation, 10^6 shots.
    const double p0 = 0.8;
    CountRecord rec{"Z", {}, 0};
    rec.add("0", static_cast<std::uint64_t>(p0 * 1e6));
    rec.add("1", static_cast<std::uint64_t>((1 - p0) * 1e6));
    Rng rng(49);
    const auto mc = monte_carlo_error({rec}, expectation_statistic(PauliString::parse("Z")), 400, rng);
    EXPECT_LE(mc.std, 0.002);
    EXPECT_NEAR(mc.mean, 2 * p0 - 1, 0.002);
}

TEST(MonteCarlo, ZeroCountStaysZero) {
    CountRecord rec{"Z", {}, 0};
    rec.add("0", 500);
    rec.add("1", 0);
    Rng rng(50);
    const CountStatistic ones = [](const std::vector<CountRecord>& r) -> std::optional<double> {
        return static_cast<double>(r[0].counts.at("1"));
    };
    const auto mc = monte_carlo_error({rec}, ones, 200, rng);
    EXPECT_EQ(mc.mean, 0.0);
    EXPECT_EQ(mc.std, 0.0);
}

TEST(MonteCarlo, WitnessOnSyntheticCounts) {
    const auto rho = apply_noise(ideal(), NoiseSpec::white(white_noise_visibility(0.70, 5)));
    Rng rng(51);
    std::vector<CountRecord> recs;
    for (const auto& b : fidelity_bases()) {
        recs.push_back(sample_counts(rho, b, 4000, rng));
    }
    const auto mc = monte_carlo_error(recs, witness_statistic(), 200, rng);
    EXPECT_LT(std::abs(mc.mean - witness_value(rho)), 2 * mc.std + 1e-12);
    EXPECT_GT(mc.std, 0.0);
}

TEST(MonteCarloProperty, ResampledMeanIsUnbiased) {
    Rng rng(52);
    for (std::uint64_t c : {5u, 50u, 400u, 10000u}) {
        CountRecord rec{"Z", {}, 0};
        rec.add("0", c);
        const CountStatistic count0 = [](const std::vector<CountRecord>& r) -> std::optional<double> {
            return static_cast<double>(r[0].counts.at("0"));
        };
        const std::size_t resamples = 2000;
        const auto mc = monte_carlo_error({rec}, count0, resamples, rng);
        EXPECT_LT(std::abs(mc.mean - static_cast<double>(c)), 3 * std::sqrt(static_cast<double>(c) / resamples))
            << "count " << c;
    }
}

TEST(MonteCarlo, DeterministicForSeed) {
    CountRecord rec{"Z", {}, 0};
    rec.add("0", 300);
    rec.add("1", 100);
    const auto stat = expectation_statistic(PauliString::parse("Z"));
    Rng a(53), b(53);
    EXPECT_EQ(monte_carlo_error({rec}, stat, 150, a).std, monte_carlo_error({rec}, stat, 150, b).std);
    EXPECT_THROW(monte_carlo_error({rec}, stat, 10, a), ArgumentError);
}

TEST(Tomography, ZeroExpectationsGiveMaximallyMixed) {
    std::vector<std::pair<PauliString, double>> ex;
    for (auto& p : all_pauli_strings(2)) {
        ex.emplace_back(p, 0.0);
    }
    EXPECT_LT(max_abs_diff(tomography_reconstruct(ex, 2).matrix(), DensityMatrix::maximally_mixed(2).matrix()),
              1e-15);
}

TEST(Tomography, PlusState) {
    const double r = 1 / std::sqrt(2.0);
    const DensityMatrix plus(StateVector({r, r}));
    EXPECT_LT(max_abs_diff(tomography_reconstruct(exact_expectations(plus), 1).matrix(), plus.matrix()), 1e-10);
}

TEST(TomographyProperty, ExactRoundTrip) {
    Engine g(54);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto rho = testing::random_density(n, g);
        ASSERT_LT(max_abs_diff(tomography_reconstruct(exact_expectations(rho), n).matrix(), rho.matrix()), 1e-9);
    }
}

TEST(Tomography, SampledTwoQubitState) {
    Engine g(55);
    Rng rng(55);
    const DensityMatrix rho(testing::random_state(2, g));
    std::vector<CountRecord> recs;
    for (const char* s : {"XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"}) {
        recs.push_back(sample_counts(rho, s, 100000, rng));
    }
    std::vector<std::pair<PauliString, double>> ex;
    for (const auto& p : all_pauli_strings(2)) {
        ex.emplace_back(p, *expectation_from_counts(*find_record(recs, p), p));
    }
    EXPECT_LE(trace_distance(tomography_reconstruct(ex, 2), rho), 0.02);
}

TEST(CountsCsv, RoundTrip) {
    Rng rng(56);
    std::vector<CountRecord> recs = {sample_counts(ideal(), "XXXXX", 500, rng),
                                     sample_counts(ideal(), "ZZZXX", 500, rng)};
    std::stringstream ss;
    write_counts_csv(ss, recs);
    EXPECT_EQ(ss.str().substr(0, 30), "setting,outcome_bitstring,coun");
    const auto back = read_counts_csv(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].counts, recs[0].counts);
    EXPECT_EQ(back[1].shots, 500u);
    std::stringstream bad("setting,outcome_bitstring,count\nXX,01\n");
    EXPECT_THROW(read_counts_csv(bad), ArgumentError);
}

}  // namespace
}  // namespace gqss
