// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/util/random.hpp>
#include <workbench/wallet/keys.hpp>
#include <nlohmann/json.hpp>
#include <optional>
#include <string_view>

namespace workbench::wallet
{
/// PBKDF2-HMAC-SHA256 rounds used unless the caller overrides them. One
/// derivation takes on the order of 100 ms on desktop hardware.
inline constexpr uint32_t default_kdf_iterations = 600000;

/// Web3 Secret Storage (v3) layout: PBKDF2-HMAC-SHA256 key derivation,
/// AES-128-CTR encryption and a keccak256 MAC over the second key half and
/// the ciphertext.
struct EncryptedKeystore
{
    bytes ciphertext;
    bytes iv;
    bytes salt;
    uint32_t iterations = default_kdf_iterations;
    Digest32 mac;
    std::optional<Address> address;

    [[nodiscard]] nlohmann::json to_json() const;
    /// Throws Error{malformed_keystore}.
    static EncryptedKeystore from_json(const nlohmann::json& j);
};

/// Fresh salt and IV are drawn from `entropy` on every call.
/// Throws Error{invalid_argument} for an empty passphrase.
EncryptedKeystore encrypt_key(const PrivateKey& key, std::string_view passphrase, util::RandomSource& entropy,
    uint32_t iterations = default_kdf_iterations);

/// Throws Error{mac_mismatch} for a wrong passphrase or tampered keystore.
PrivateKey decrypt_key(const EncryptedKeystore& ks, std::string_view passphrase);
}  // namespace workbench::wallet
