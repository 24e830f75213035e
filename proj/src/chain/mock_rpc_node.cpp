// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/chain/mock_rpc_node.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/error.hpp>
#include <httplib.h>

namespace workbench::chain
{
namespace
{
// Application-level errors use the server-error range like geth does.
constexpr int server_error = -32000;

nlohmann::json error_response(const nlohmann::json& id, int code, const std::string& message)
{
    return {{"jsonrpc", "2.0"}, {"id", id}, {"error", {{"code", code}, {"message", message}}}};
}

nlohmann::json rpc_receipt(const Receipt& r)
{
    return {
        {"transactionHash", to_hex(r.tx_hash)},
        {"status", r.success ? "0x1" : "0x0"},
        {"contractAddress", r.contract_address ? nlohmann::json(to_hex(*r.contract_address)) : nlohmann::json(nullptr)},
        {"blockNumber", to_quantity(r.block_number)},
        {"gasUsed", to_quantity(r.gas_used)},
    };
}
}  // namespace

MockRpcNode::MockRpcNode(std::shared_ptr<MockChain> chain)
  : chain_{std::move(chain)}, server_{std::make_unique<httplib::Server>()}
{
    server_->Post("/", [this](const httplib::Request& req, httplib::Response& res) {
        nlohmann::json reply;
        try
        {
            reply = handle(nlohmann::json::parse(req.body));
        }
        catch (const nlohmann::json::exception&)
        {
            reply = error_response(nullptr, -32700, "parse error");
        }
        res.set_content(reply.dump(), "application/json");
    });
}

MockRpcNode::~MockRpcNode()
{
    stop();
}

int MockRpcNode::start(const std::string& host, int port)
{
    host_ = host;
    port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (port_ <= 0)
        throw Error{Errc::unreachable, "cannot bind " + host + ":" + std::to_string(port)};
    thread_ = std::thread{[this] { server_->listen_after_bind(); }};
    server_->wait_until_ready();
    return port_;
}

void MockRpcNode::serve(const std::string& host, int port)
{
    host_ = host;
    port_ = port;
    if (!server_->listen(host, port))
        throw Error{Errc::unreachable, "cannot bind " + host + ":" + std::to_string(port)};
}

void MockRpcNode::stop()
{
    server_->stop();
    if (thread_.joinable())
        thread_.join();
}

std::string MockRpcNode::url() const
{
    return "http://" + host_ + ":" + std::to_string(port_);
}

nlohmann::json MockRpcNode::handle(const nlohmann::json& request)
{
    if (!request.is_array())
        return handle_one(request);
    if (request.empty())
        return error_response(nullptr, -32600, "empty batch");
    auto out = nlohmann::json::array();
    for (const auto& r : request)
        out.push_back(handle_one(r));
    return out;
}

nlohmann::json MockRpcNode::handle_one(const nlohmann::json& request)
{
    if (!request.is_object() || request.value("jsonrpc", "") != "2.0" || !request.contains("method") ||
        !request["method"].is_string())
        return error_response(request.is_object() ? request.value("id", nlohmann::json{}) : nlohmann::json(nullptr), -32600,
            "invalid request");
    const auto id = request.value("id", nlohmann::json{});
    const auto method = request["method"].get<std::string>();
    const auto params = request.value("params", nlohmann::json::array());

    try
    {
        const auto param = [&](size_t i) -> std::string {
            if (!params.is_array() || params.size() <= i || !params[i].is_string())
                throw Error{Errc::invalid_argument, "missing string parameter " + std::to_string(i)};
            return params[i].get<std::string>();
        };

        nlohmann::json result;
        if (method == "eth_chainId")
            result = to_quantity(chain_->get_chain_id());
        else if (method == "eth_blockNumber")
            result = to_quantity(chain_->block_number());
        else if (method == "eth_getTransactionCount")
            result = to_quantity(chain_->get_nonce(fixed_from_hex<20>(param(0))));
        else if (method == "eth_sendRawTransaction")
            result = to_hex(chain_->send_raw(from_hex(param(0))));
        else if (method == "eth_getTransactionReceipt")
        {
            const auto r = chain_->get_receipt(fixed_from_hex<32>(param(0)));
            result = r ? rpc_receipt(*r) : nlohmann::json(nullptr);
        }
        else if (method == "eth_call")
        {
            if (!params.is_array() || params.empty() || !params[0].is_object())
                throw Error{Errc::invalid_argument, "eth_call needs a call object"};
            const auto& c = params[0];
            const auto to = fixed_from_hex<20>(c.at("to").get<std::string>());
            const auto data = from_hex(c.value("data", c.value("input", std::string{"0x"})));
            result = to_hex(chain_->call(to, data));
        }
        else
            return error_response(id, -32601, "method not found: " + method);
        return {{"jsonrpc", "2.0"}, {"id", id}, {"result", result}};
    }
    catch (const Error& e)
    {
        const int code = e.code() == Errc::invalid_argument || e.code() == Errc::invalid_hex ? -32602 : server_error;
        return error_response(id, code, std::string{to_string(e.code())} + ": " + e.what());
    }
    catch (const nlohmann::json::exception& e)
    {
        return error_response(id, -32602, e.what());
    }
}
}  // namespace workbench::chain
