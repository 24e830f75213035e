// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <nlohmann/json.hpp>
#include <chrono>
#include <optional>
#include <string>

namespace workbench::chain
{
/// Outcome of a mined transaction, independent of the backend.
struct Receipt
{
    Digest32 tx_hash;
    bool success = false;
    std::optional<Address> contract_address;  ///< present only for creations
    uint64_t block_number = 0;
    uint64_t gas_used = 0;

    friend bool operator==(const Receipt&, const Receipt&) = default;
};

/// API shape: hashes and addresses as 0x-hex, integers as decimal strings.
nlohmann::json to_json(const Receipt& r);
Receipt receipt_from_json(const nlohmann::json& j);

enum class NetworkKind
{
    rpc,
    mock,
};

struct NetworkConfig
{
    std::string id;
    std::string name;
    NetworkKind kind = NetworkKind::mock;
    std::string rpc_url;  ///< required for rpc networks, with an explicit port
    uint64_t chain_id = 1;
    uint256 gas_price = 0;
    uint64_t gas_limit_default = 4'000'000;
    std::chrono::milliseconds poll_interval{250};
    std::chrono::milliseconds receipt_timeout{30'000};

    /// Throws Error{invalid_argument}.
    void validate() const;

    [[nodiscard]] nlohmann::json to_json() const;
    static NetworkConfig from_json(const nlohmann::json& j);

    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// A chain the workbench can deploy to and talk to. Implementations are
/// shared across request handlers and must be thread-safe.
class Backend
{
public:
    virtual ~Backend() = default;

    /// Errors for all methods: unreachable, protocol_error, node_error.
    virtual uint64_t get_chain_id() = 0;
    /// Pending nonce: mined transactions plus any queued ones.
    virtual uint64_t get_nonce(const Address& account) = 0;
    /// Returns keccak256(raw).
    virtual Digest32 send_raw(bytes_view raw) = 0;
    virtual std::optional<Receipt> get_receipt(const Digest32& tx_hash) = 0;
    virtual bytes call(const Address& to, bytes_view data) = 0;
    virtual uint64_t block_number() = 0;
};

/// CREATE rule: keccak256(rlp([sender, nonce]))[12..32].
Address derive_contract_address(const Address& sender, uint64_t nonce);
}  // namespace workbench::chain
