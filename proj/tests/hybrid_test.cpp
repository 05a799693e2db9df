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

#include <map>
#include <numbers>

#include "gqss/hybrid.hpp"
#include "testing.hpp"

namespace gqss {
namespace {

constexpr double kPi = std::numbers::pi;

const StateVector& ideal() {
    static const StateVector s = canonical_resource().state;
    return s;
}

TEST(Shamir, ZeroPolynomial) {
    const std::uint32_t c[2] = {0, 0};
    for (const auto& s : shamir_share_with(0, c, 4).shares) {
        EXPECT_EQ(s.y, 0u);
    }
}

TEST(Shamir, KnownPolynomial) {
    // f(x) = 3 + 2x + x^2 over GF(251)
    const std::uint32_t c[2] = {2, 1};
    const auto b = shamir_share_with(3, c, 4);
    const std::vector<std::uint32_t> expect = {6, 11, 18, 27};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(b.shares[i].x, i + 1);
        EXPECT_EQ(b.shares[i].y, expect[i]);
    }
}

TEST(Shamir, AnyThreeReconstruct) {
    Rng rng(71);
    const auto b = shamir_share(3, 3, 4, rng);
    for (const std::vector<int>& who : {std::vector<int>{1, 2, 3}, {2, 3, 4}, {1, 2, 4}, {1, 3, 4}}) {
        EXPECT_EQ(shamir_reconstruct(b.held_by(who), 3), 3u);
    }
    EXPECT_EQ(shamir_reconstruct(b.shares, 3), 3u);
}

TEST(Shamir, TwoSharesAreNotEnough) {
    Rng rng(72);
    const auto b = shamir_share(1, 3, 4, rng);
    EXPECT_THROW(shamir_reconstruct(b.held_by({1, 2}), 3), ThresholdError);
    EXPECT_THROW(reconstruct_pad(b.held_by({1, 2}), b.held_by({1, 2})), ThresholdError);
}

TEST(Shamir, RejectsBadInput) {
    Rng rng(73);
    EXPECT_THROW(shamir_share(1, 5, 4, rng), ArgumentError);
    EXPECT_THROW(shamir_share(251, 3, 4, rng), ArgumentError);
    EXPECT_THROW(shamir_share(1, 3, 4, rng, 9), ArgumentError);
    EXPECT_THROW(shamir_share(1, 3, 5, rng, 5), ArgumentError);
    const std::vector<SharePoint> dup = {{1, 2}, {1, 2}, {2, 3}};
    EXPECT_THROW(shamir_reconstruct(dup, 3), ArgumentError);
}

TEST(ShamirProperty, RoundTripRandom) {
    Rng rng(74);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto secret = static_cast<std::uint32_t>(rng.below(kShareField));
        const std::size_t k = 1 + rng.below(4);
        const auto b = shamir_share(secret, k, 4, rng);
        std::vector<SharePoint> pick(b.shares.begin() + static_cast<long>(4 - k), b.shares.end());
        ASSERT_EQ(shamir_reconstruct(pick, k), secret);
    }
}

TEST(ShamirProperty, ExhaustiveThresholdOverGF5) {
    // For every pair of players, each share view occurs exactly once per secret.
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            for (std::uint32_t secret = 0; secret < 5; ++secret) {
                std::map<std::pair<std::uint32_t, std::uint32_t>, int> views;
                for (std::uint32_t c1 = 0; c1 < 5; ++c1) {
                    for (std::uint32_t c2 = 0; c2 < 5; ++c2) {
                        const std::uint32_t c[2] = {c1, c2};
                        const auto b = shamir_share_with(secret, c, 4, 5);
                        ++views[{b.shares[i].y, b.shares[j].y}];
                        ASSERT_EQ(shamir_reconstruct(b.held_by({1, 3, 4}), 3, 5), secret);
                    }
                }
                ASSERT_EQ(views.size(), 25u);
                for (const auto& [v, n] : views) {
                    ASSERT_EQ(n, 1);
                }
            }
        }
    }
}

TEST(ShamirProperty, TwoShareViewIsUniformOverGF251) {
    // Chi-square on a hash of the (y1, y2) view: 251 cells, 10^4 trials per secret.
    Rng rng(75);
    for (std::uint32_t secret : {0u, 1u}) {
        std::vector<int> cells(kShareField, 0);
        const int trials = 10000;
        for (int t = 0; t < trials; ++t) {
            const auto b = shamir_share(secret, 3, 4, rng);
            ++cells[(b.shares[0].y + 7 * b.shares[2].y) % kShareField];
        }
        const double expect = static_cast<double>(trials) / kShareField;
        double chi2 = 0.0;
        for (int c : cells) {
            chi2 += (c - expect) * (c - expect) / expect;
        }
        EXPECT_LT(chi2, 250 + 5 * std::sqrt(2 * 250.0)) << "secret " << secret;
    }
}

TEST(WireFormat, RoundTripAndValidation) {
    const SharePoint s{4, 250};
    const auto w = encode_share(s);
    EXPECT_EQ(w[0], 4);
    EXPECT_EQ(w[1], 250);
    EXPECT_EQ(w[2], 251);
    EXPECT_EQ(decode_share(w), s);
    EXPECT_THROW(decode_share({4, 1, 7}), ArgumentError);
    EXPECT_THROW(decode_share({0, 1, 251}), ArgumentError);
    EXPECT_THROW(encode_share({1, 251}), ArgumentError);
}

TEST(HybridEncode, NoPadIsDirectEncoding) {
    const SecretQubit s(0.9, 1.7);
    Rng a(76), b(76);
    const auto h = hybrid_encode_with(s, ideal(), {0, 0}, a);
    const auto d = qq_encode_direct(s, ideal(), b);
    EXPECT_LT(distance_up_to_phase(h.players, d.players), 1e-15);
}

TEST(HybridEncode, XPadFlipsTheSecret) {
    Rng rng(77);
    const auto h = hybrid_encode_with(SecretQubit(0, 0), ideal(), {1, 0}, rng);
    EXPECT_LT(distance_up_to_phase(h.players, square_state_flipped()), 1e-12);
    const auto out = qq_retrieve({1, 2, 4}, h.players, rng);
    EXPECT_NEAR(fidelity_pure(StateVector::basis(1, 1), out), 1.0, 1e-9);
}

TEST(HybridRetrieve, PlusOnTriplet124) {
    Rng rng(78);
    const SecretQubit s(kPi / 2, 0);
    const auto h = hybrid_encode(s, ideal(), rng);
    const auto out = hybrid_retrieve({1, 2, 4}, DensityMatrix(h.players), h.x_shares.held_by({1, 2, 4}),
                                     h.z_shares.held_by({1, 2, 4}), rng);
    EXPECT_NEAR(fidelity_pure(s.state(), out), 1.0, 1e-9);
}

TEST(HybridRetrieveProperty, Exhaustive96) {
    Rng rng(79);
    int cases = 0;
    for (const auto& t : all_triplets()) {
        for (int x = 0; x < 2; ++x) {
            for (int z = 0; z < 2; ++z) {
                for (const auto& s : cardinal_secrets()) {
                    const auto h = hybrid_encode_with(s, ideal(), {x, z}, rng);
                    const PadBits pad = reconstruct_pad(h.x_shares.held_by(t), h.z_shares.held_by(t));
                    ASSERT_EQ(pad.x, x);
                    ASSERT_EQ(pad.z, z);
                    const DensityMatrix enc(h.players);
                    for (int sz = 0; sz < 2; ++sz) {
                        for (int sx = 0; sx < 2; ++sx) {
                            const auto br = hybrid_retrieve_branch(t, enc, pad, sz, sx);
                            ASSERT_NEAR(fidelity_pure(s.state(), br.recovered), 1.0, 1e-9);
                        }
                    }
                    ++cases;
                }
            }
        }
    }
    EXPECT_EQ(cases, 96);
}

TEST(PadAveraging, PairStatesIndependentOfSecret) {
    const auto mixed = DensityMatrix::maximally_mixed(2).matrix();
    const auto xx = two_qubit_pauli_state({{1.0, "XX"}}).matrix();
    const std::vector<PlayerSet> pairs = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    for (auto plane : {SweepPlane::ZY, SweepPlane::ZX, SweepPlane::XY}) {
        for (int k = 0; k < 24; ++k) {
            const auto s = secret_on_plane(plane, 2 * kPi * k / 24);
            for (const auto& p : pairs) {
                const auto avg = pad_averaged_pair_state(p, s, ideal());
                ASSERT_LT(max_abs_diff(avg.matrix(), is_opposite_pair(p) ? xx : mixed), 1e-9) << players_string(p);
            }
        }
    }
}

TEST(PadAveraging, WithoutPadOppositePairLeaks) {
    const SecretQubit y(kPi / 2, kPi / 2);
    const auto bare = pair_reduced_state({1, 2}, y);
    const auto padded = pad_averaged_pair_state({1, 2}, y, ideal());
    EXPECT_GT(trace_distance(bare, padded), 0.4);
}

}  // namespace
}  // namespace gqss
