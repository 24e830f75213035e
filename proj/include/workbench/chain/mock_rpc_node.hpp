// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/chain/mock_chain.hpp>
#include <memory>
#include <thread>

namespace httplib
{
class Server;
}

namespace workbench::chain
{
/// Serves a MockChain over JSON-RPC 2.0 on POST /. Supports the methods
/// RpcBackend uses plus batch requests.
class MockRpcNode
{
public:
    explicit MockRpcNode(std::shared_ptr<MockChain> chain);
    ~MockRpcNode();
    MockRpcNode(const MockRpcNode&) = delete;
    MockRpcNode& operator=(const MockRpcNode&) = delete;

    /// Binds and starts serving on a background thread. Port 0 picks a free
    /// port. Returns the bound port.
    int start(const std::string& host = "127.0.0.1", int port = 0);
    /// Blocks serving on the calling thread.
    void serve(const std::string& host, int port);
    void stop();

    [[nodiscard]] std::string url() const;

    /// Dispatches one JSON-RPC request object or batch; no transport.
    nlohmann::json handle(const nlohmann::json& request);

private:
    nlohmann::json handle_one(const nlohmann::json& request);

    std::shared_ptr<MockChain> chain_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    std::string host_;
    int port_ = 0;
};
}  // namespace workbench::chain
