// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/chain/backend.hpp>
#include <atomic>

namespace workbench::chain
{
/// JSON-RPC 2.0 client for an Ethereum-compatible node. Each request opens
/// its own connection, so concurrent calls never share a socket.
class RpcBackend final : public Backend
{
public:
    explicit RpcBackend(std::string url, std::chrono::milliseconds timeout = std::chrono::seconds{10});

    uint64_t get_chain_id() override;
    uint64_t get_nonce(const Address& account) override;
    Digest32 send_raw(bytes_view raw) override;
    std::optional<Receipt> get_receipt(const Digest32& tx_hash) override;
    bytes call(const Address& to, bytes_view data) override;
    uint64_t block_number() override;

    /// Raw request. Errors: unreachable (transport), protocol_error
    /// (malformed or mismatched response), node_error (JSON-RPC error object).
    nlohmann::json request(const std::string& method, nlohmann::json params);

private:
    std::string origin_;  ///< scheme://host:port
    std::string path_;
    std::chrono::milliseconds timeout_;
    std::atomic<uint64_t> next_id_{1};
};

/// Receipt from an eth_getTransactionReceipt result object.
Receipt receipt_from_rpc(const nlohmann::json& j);
}  // namespace workbench::chain
