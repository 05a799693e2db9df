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

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gqss/qq_protocol.hpp"
#include "gqss/random.hpp"

namespace gqss {

// ---------------------------------------------------------------------------
// Shamir sharing over GF(p)

inline constexpr std::uint32_t kShareField = 251;

struct ThresholdError : ArgumentError {
    using ArgumentError::ArgumentError;
};

struct SharePoint {
    std::uint32_t x;
    std::uint32_t y;
    friend bool operator==(const SharePoint&, const SharePoint&) = default;
};

/// Shares of one field element; shares[i] belongs to player i+1.
struct ShareBundle {
    std::size_t threshold = 0;
    std::uint32_t modulus = kShareField;
    std::vector<SharePoint> shares;

    std::vector<SharePoint> held_by(const std::vector<int>& players) const {
        std::vector<SharePoint> out;
        for (int p : players) {
            if (p < 1 || static_cast<std::size_t>(p) > shares.size()) {
                throw ArgumentError("no share for player " + std::to_string(p));
            }
            out.push_back(shares[static_cast<std::size_t>(p - 1)]);
        }
        return out;
    }
};

namespace detail {

inline bool is_prime(std::uint32_t p) {
    if (p < 2) {
        return false;
    }
    for (std::uint32_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) {
        throw ArgumentError("zero has no inverse");
    }
    return mod_pow(a, p - 2, p);
}

inline void check_field(std::uint32_t p) {
    if (!is_prime(p) || p > 65521) {
        throw ArgumentError("field modulus must be a prime below 2^16");
    }
}

}  // namespace detail

/// Shares f(1..n) of f(x) = secret + c_1 x + ... + c_{k-1} x^{k-1} with the given coefficients.
inline ShareBundle shamir_share_with(std::uint32_t secret, std::span<const std::uint32_t> coefficients, std::size_t n,
                                     std::uint32_t modulus = kShareField) {
    detail::check_field(modulus);
    const std::size_t k = coefficients.size() + 1;
    if (k < 1 || k > n) {
        throw ArgumentError("threshold must satisfy 1 <= k <= n");
    }
    if (n >= modulus) {
        throw ArgumentError("need n < field modulus for distinct nonzero points");
    }
    if (secret >= modulus) {
        throw ArgumentError("secret is not a field element");
    }
    ShareBundle b{k, modulus, {}};
    for (std::uint32_t x = 1; x <= n; ++x) {
        std::uint64_t y = 0;
        for (std::size_t i = coefficients.size(); i-- > 0;) {  // Horner, highest degree first
            y = (y + coefficients[i] % modulus) * x % modulus;
        }
        y = (y + secret) % modulus;
        b.shares.push_back({x, static_cast<std::uint32_t>(y)});
    }
    return b;
}

inline ShareBundle shamir_share(std::uint32_t secret, std::size_t k, std::size_t n, Rng& rng,
                                std::uint32_t modulus = kShareField) {
    if (k < 1 || k > n) {
        throw ArgumentError("threshold must satisfy 1 <= k <= n");
    }
    detail::check_field(modulus);
    std::vector<std::uint32_t> c(k - 1);
    for (auto& v : c) {
        v = static_cast<std::uint32_t>(rng.below(modulus));
    }
    return shamir_share_with(secret, c, n, modulus);
}

/// Lagrange interpolation at 0 through every given point.
inline std::uint32_t shamir_reconstruct(std::span<const SharePoint> shares, std::size_t threshold,
                                        std::uint32_t modulus = kShareField) {
    detail::check_field(modulus);
    if (shares.size() < threshold) {
        throw ThresholdError("need " + std::to_string(threshold) + " shares, got " + std::to_string(shares.size()));
    }
    std::set<std::uint32_t> xs;
    for (const auto& s : shares) {
        if (s.x % modulus == 0) {
            throw ArgumentError("evaluation point 0 is not a share");
        }
        if (!xs.insert(s.x % modulus).second) {
            throw ArgumentError("duplicate evaluation point " + std::to_string(s.x));
        }
    }
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        std::uint64_t num = 1;
        std::uint64_t den = 1;
        for (std::size_t j = 0; j < shares.size(); ++j) {
            if (i == j) {
                continue;
            }
            num = num * shares[j].x % modulus;
            den = den * ((shares[j].x + modulus - shares[i].x % modulus) % modulus) % modulus;
        }
        acc = (acc + shares[i].y % modulus * num % modulus * detail::mod_inv(static_cast<std::uint32_t>(den), modulus)) %
              modulus;
    }
    return static_cast<std::uint32_t>(acc);
}

inline std::uint32_t shamir_reconstruct(const std::vector<SharePoint>& shares, std::size_t threshold,
                                        std::uint32_t modulus = kShareField) {
    return shamir_reconstruct(std::span<const SharePoint>(shares), threshold, modulus);
}

/// Three bytes per share: evaluation point, value, field marker.
using WireShare = std::array<std::uint8_t, 3>;

inline WireShare encode_share(const SharePoint& s, std::uint32_t modulus = kShareField) {
    if (modulus != kShareField) {
        throw ArgumentError("wire format carries GF(251) shares only");
    }
    if (s.x == 0 || s.x >= modulus || s.y >= modulus) {
        throw ArgumentError("share is not a GF(251) point");
    }
    return {static_cast<std::uint8_t>(s.x), static_cast<std::uint8_t>(s.y), static_cast<std::uint8_t>(kShareField)};
}

inline SharePoint decode_share(const WireShare& w) {
    if (w[2] != kShareField) {
        throw ArgumentError("bad field marker in share");
    }
    if (w[0] == 0 || w[0] >= kShareField || w[1] >= kShareField) {
        throw ArgumentError("share bytes out of range");
    }
    return {w[0], w[1]};
}

// ---------------------------------------------------------------------------
// Pad and encoding

struct PadBits {
    int x = 0;
    int z = 0;
};

/// X_L^x Z_L^z on the encoded state, i.e. X^x Z^z on the secret.
inline StateVector apply_logical_pad(const StateVector& players, PadBits pad) {
    StateVector out = players;
    if (pad.z) {
        out = logical_z().apply(out);
    }
    if (pad.x) {
        out = logical_x().apply(out);
    }
    return out;
}

inline DensityMatrix apply_logical_pad(const DensityMatrix& players, PadBits pad) {
    DensityMatrix out = players;
    if (pad.z) {
        out = conjugate(out, logical_z());
    }
    if (pad.x) {
        out = conjugate(out, logical_x());
    }
    return out;
}

struct HybridEncoding {
    StateVector players;
    PadBits pad;
    ShareBundle x_shares;
    ShareBundle z_shares;
    int s0;
};

inline HybridEncoding hybrid_encode_with(const SecretQubit& s, const StateVector& resource, PadBits pad, Rng& rng,
                                         std::size_t k = 3) {
    auto enc = qq_encode_direct(s, resource, rng);
    auto xs = shamir_share(static_cast<std::uint32_t>(pad.x), k, 4, rng);
    auto zs = shamir_share(static_cast<std::uint32_t>(pad.z), k, 4, rng);
    return {apply_logical_pad(enc.players, pad), pad, std::move(xs), std::move(zs), enc.s0};
}

inline HybridEncoding hybrid_encode(const SecretQubit& s, const StateVector& resource, Rng& rng, std::size_t k = 3) {
    PadBits pad{rng.bit(), rng.bit()};
    return hybrid_encode_with(s, resource, pad, rng, k);
}

/// Z^z X^x on a retrieved qubit, which removes X^x Z^z.
inline DensityMatrix undo_pad(const DensityMatrix& q, PadBits pad) {
    DensityMatrix out = q;
    if (pad.x) {
        out = conjugate_local(out, gates::X(), 0);
    }
    if (pad.z) {
        out = conjugate_local(out, gates::Z(), 0);
    }
    return out;
}

inline PadBits reconstruct_pad(const std::vector<SharePoint>& x_shares, const std::vector<SharePoint>& z_shares,
                               std::size_t k = 3) {
    const auto x = shamir_reconstruct(x_shares, k);
    const auto z = shamir_reconstruct(z_shares, k);
    if (x > 1 || z > 1) {
        throw ArgumentError("reconstructed pad value is not a bit");
    }
    return {static_cast<int>(x), static_cast<int>(z)};
}

/// The triplet pools its shares, retrieves the padded secret onto the designated
/// player's qubit and removes the pad there (the outsider's qubit stays untouched).
inline DensityMatrix hybrid_retrieve(const PlayerSet& triplet, const DensityMatrix& encoded,
                                     const std::vector<SharePoint>& x_shares,
                                     const std::vector<SharePoint>& z_shares, Rng& rng, std::size_t k = 3) {
    triplet_roles(triplet);
    const PadBits pad = reconstruct_pad(x_shares, z_shares, k);
    return undo_pad(qq_retrieve(triplet, encoded, rng), pad);
}

inline RetrievalBranch hybrid_retrieve_branch(const PlayerSet& triplet, const DensityMatrix& encoded, PadBits pad,
                                              int s_z, int s_x) {
    auto br = qq_retrieve_branch(triplet, encoded, s_z, s_x);
    if (br.probability > 0.0) {
        br.recovered = undo_pad(br.recovered, pad);
    }
    return br;
}

/// Uniform mixture over the four pads of a pair's reduced state.
inline DensityMatrix pad_averaged_pair_state(const PlayerSet& pair, const SecretQubit& s,
                                             const StateVector& resource) {
    const StateVector enc = logical_encoding(s, resource);
    Matrix acc(4, 4);
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            acc += pair_state_from(DensityMatrix(apply_logical_pad(enc, {x, z})), pair).matrix();
        }
    }
    return DensityMatrix::normalized(std::move(acc));
}

}  // namespace gqss
