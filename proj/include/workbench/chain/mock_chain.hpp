// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/chain/backend.hpp>
#include <filesystem>
#include <map>
#include <mutex>

namespace workbench::chain
{
using Selector = FixedBytes<4>;

/// In-process chain that mines every accepted transaction into its own block.
/// Contracts do not execute: calls return registered stub outputs, then the
/// declared default output for the selector, then empty bytes.
class MockChain final : public Backend
{
public:
    /// With a persist path the state is loaded from it (if present) and
    /// rewritten atomically after every mutation.
    explicit MockChain(uint64_t chain_id, std::optional<std::filesystem::path> persist = {});

    uint64_t get_chain_id() override;
    uint64_t get_nonce(const Address& account) override;
    /// Errors: malformed_rlp, bad_signature, high_s, wrong_chain_id,
    /// wrong_chain, nonce_mismatch, insufficient_funds, invalid_argument.
    Digest32 send_raw(bytes_view raw) override;
    std::optional<Receipt> get_receipt(const Digest32& tx_hash) override;
    /// Errors: no_such_contract.
    bytes call(const Address& to, bytes_view data) override;
    uint64_t block_number() override;

    /// Errors: no_such_contract.
    void register_stub(const Address& contract, const Selector& selector, bytes output);
    void declare_default(const Address& contract, const Selector& selector, bytes output);

    void fund(const Address& account, const uint256& amount);
    uint256 balance(const Address& account);
    std::optional<bytes> code(const Address& contract);

    /// Intrinsic gas: 21000, +32000 for creation, 16 per non-zero and
    /// 4 per zero data byte.
    static uint64_t intrinsic_gas(bool creation, bytes_view data) noexcept;

private:
    struct Account
    {
        uint64_t nonce = 0;
        uint256 balance = 0;
    };
    using StubKey = std::pair<Address, Selector>;

    void load();
    void persist_locked() const;

    std::mutex mutex_;
    uint64_t chain_id_;
    std::optional<std::filesystem::path> persist_;
    uint64_t height_ = 0;
    std::map<Address, Account> accounts_;
    std::map<Address, bytes> code_;
    std::map<Digest32, Receipt> receipts_;
    std::map<StubKey, bytes> stubs_;
    std::map<StubKey, bytes> defaults_;
};
}  // namespace workbench::chain
