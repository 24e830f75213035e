// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <workbench/util/random.hpp>
#include <workbench/wallet/secp256k1.hpp>

namespace workbench::wallet
{
using secp256k1::PublicKey;

/// A secp256k1 scalar in [1, n). Key material is wiped on destruction.
class PrivateKey
{
public:
    /// Throws Error{invalid_private_key} unless `raw` is 32 bytes holding a valid scalar.
    static PrivateKey from_bytes(bytes_view raw);

    PrivateKey(const PrivateKey&) = default;
    PrivateKey& operator=(const PrivateKey&) = default;
    ~PrivateKey();

    [[nodiscard]] const secp256k1::Secret& secret() const noexcept { return secret_; }
    [[nodiscard]] PublicKey public_key() const;
    [[nodiscard]] Address address() const;

    friend bool operator==(const PrivateKey& a, const PrivateKey& b) noexcept { return a.secret_ == b.secret_; }

private:
    explicit PrivateKey(const secp256k1::Secret& s) noexcept : secret_{s} {}
    secp256k1::Secret secret_;
};

struct KeyPair
{
    PrivateKey key;
    Address address;
};

/// Draws 32 bytes at a time until a valid scalar comes up.
KeyPair generate_keypair(util::RandomSource& entropy);

/// Last 20 bytes of keccak256(x || y). Throws Error{point_not_on_curve}.
Address derive_address(const PublicKey& pubkey);

/// EIP-55 mixed-case checksum form, for display.
std::string checksum_address(const Address& a);
}  // namespace workbench::wallet
