// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <workbench/wallet/keys.hpp>
#include <optional>

namespace workbench::wallet
{
/// Pre-envelope Ethereum transaction with EIP-155 replay protection.
struct LegacyTransaction
{
    uint64_t nonce = 0;
    uint256 gas_price = 0;
    uint64_t gas_limit = 0;
    std::optional<Address> to;  ///< absent for contract creation
    uint256 value = 0;
    bytes data;
    uint64_t chain_id = 1;

    [[nodiscard]] bool is_creation() const noexcept { return !to.has_value(); }

    /// chain_id >= 1, gas_limit > 0, creations carry code.
    /// Throws Error{invalid_argument}.
    void validate() const;

    friend bool operator==(const LegacyTransaction&, const LegacyTransaction&) = default;
};

struct Signature
{
    uint256 r;
    uint256 s;
    uint64_t v = 0;
};

/// keccak256 of rlp([nonce, gas_price, gas_limit, to, value, data, chain_id, 0, 0]).
Digest32 signing_hash(const LegacyTransaction& tx);

/// Raw signed transaction: rlp([nonce, gas_price, gas_limit, to, value, data, v, r, s]).
bytes sign_transaction(const LegacyTransaction& tx, const PrivateKey& key);

struct RecoveredTransaction
{
    Address sender;
    LegacyTransaction tx;
    Signature signature;
};

/// Parses a raw signed transaction and recovers its sender.
/// Errors: malformed_rlp, bad_signature, high_s, wrong_chain_id.
RecoveredTransaction recover_sender(bytes_view raw);
}  // namespace workbench::wallet
