// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <optional>

namespace workbench::secp256k1
{
/// Uncompressed point without the 0x04 prefix: x || y, big-endian.
using PublicKey = FixedBytes<64>;
using Secret = FixedBytes<32>;

const uint256& field_prime() noexcept;
const uint256& group_order() noexcept;

struct RecoverableSignature
{
    uint256 r;
    uint256 s;  ///< always in the lower half of the group order
    uint8_t recovery_id = 0;  ///< parity of R.y
};

/// True when 1 <= scalar < n.
bool is_valid_secret(const Secret& secret) noexcept;

/// secret * G. The secret must be valid.
PublicKey derive_public(const Secret& secret);

bool is_on_curve(const PublicKey& key) noexcept;

/// Deterministic ECDSA with an RFC 6979 HMAC-SHA256 nonce and low-s
/// normalization.
RecoverableSignature sign(const Digest32& hash, const Secret& secret);

/// Recovers the signer's public key, or nullopt for an invalid signature.
std::optional<PublicKey> recover(const Digest32& hash, const uint256& r, const uint256& s, uint8_t recovery_id);
}  // namespace workbench::secp256k1
