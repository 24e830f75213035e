// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/chain/rpc_backend.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/error.hpp>
#include <httplib.h>
#include <regex>

namespace workbench::chain
{
namespace
{
uint64_t quantity_u64(const nlohmann::json& j, const char* what)
{
    if (!j.is_string())
        throw Error{Errc::protocol_error, std::string{what} + ": expected hex quantity"};
    try
    {
        const auto v = from_quantity(j.get<std::string>());
        if (v > std::numeric_limits<uint64_t>::max())
            throw Error{Errc::protocol_error, std::string{what} + ": quantity exceeds 64 bits"};
        return static_cast<uint64_t>(v);
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::protocol_error)
            throw;
        throw Error{Errc::protocol_error, std::string{what} + ": " + e.what()};
    }
}

template <size_t N>
FixedBytes<N> fixed_field(const nlohmann::json& j, const char* what)
{
    try
    {
        return fixed_from_hex<N>(j.get<std::string>());
    }
    catch (const std::exception& e)
    {
        throw Error{Errc::protocol_error, std::string{what} + ": " + e.what()};
    }
}
}  // namespace

RpcBackend::RpcBackend(std::string url, std::chrono::milliseconds timeout) : timeout_{timeout}
{
    static const std::regex re{R"(^(https?://[^/]+)(/.*)?$)"};
    std::smatch m;
    if (!std::regex_match(url, m, re))
        throw Error{Errc::invalid_argument, "invalid rpc url: " + url};
    origin_ = m[1].str();
    path_ = m[2].matched ? m[2].str() : "/";
}

nlohmann::json RpcBackend::request(const std::string& method, nlohmann::json params)
{
    const auto id = next_id_.fetch_add(1);
    const nlohmann::json req = {{"jsonrpc", "2.0"}, {"id", id}, {"method", method}, {"params", std::move(params)}};

    httplib::Client client{origin_};
    const auto secs = timeout_.count() / 1000;
    const auto usecs = (timeout_.count() % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);

    const auto res = client.Post(path_, req.dump(), "application/json");
    if (!res)
        throw Error{Errc::unreachable, origin_ + ": " + httplib::to_string(res.error())};
    if (res->status != 200)
        throw Error{Errc::protocol_error, method + ": HTTP status " + std::to_string(res->status)};

    nlohmann::json body;
    try
    {
        body = nlohmann::json::parse(res->body);
    }
    catch (const nlohmann::json::exception&)
    {
        throw Error{Errc::protocol_error, method + ": response is not JSON"};
    }

    // Some proxies answer with a batch even for single requests.
    const nlohmann::json* resp = nullptr;
    if (body.is_array())
    {
        for (const auto& e : body)
            if (e.is_object() && e.contains("id") && e["id"] == id)
                resp = &e;
    }
    else if (body.is_object())
        resp = &body;
    if (resp == nullptr)
        throw Error{Errc::protocol_error, method + ": no response with id " + std::to_string(id)};
    if (resp->value("jsonrpc", "") != "2.0")
        throw Error{Errc::protocol_error, method + ": missing jsonrpc 2.0 marker"};
    if (!resp->contains("id") || (*resp)["id"] != id)
        throw Error{Errc::protocol_error, method + ": response id mismatch"};

    if (const auto err = resp->find("error"); err != resp->end() && !err->is_null())
    {
        const auto code = err->is_object() ? err->value("code", 0) : 0;
        const auto msg = err->is_object() ? err->value("message", std::string{}) : err->dump();
        throw Error{Errc::node_error, method + ": node error " + std::to_string(code) + ": " + msg};
    }
    if (!resp->contains("result"))
        throw Error{Errc::protocol_error, method + ": neither result nor error"};
    return (*resp)["result"];
}

uint64_t RpcBackend::get_chain_id()
{
    return quantity_u64(request("eth_chainId", nlohmann::json::array()), "eth_chainId");
}

uint64_t RpcBackend::get_nonce(const Address& account)
{
    return quantity_u64(request("eth_getTransactionCount", {to_hex(account), "pending"}), "eth_getTransactionCount");
}

Digest32 RpcBackend::send_raw(bytes_view raw)
{
    return fixed_field<32>(request("eth_sendRawTransaction", {to_hex(raw)}), "eth_sendRawTransaction");
}

std::optional<Receipt> RpcBackend::get_receipt(const Digest32& tx_hash)
{
    const auto r = request("eth_getTransactionReceipt", {to_hex(tx_hash)});
    if (r.is_null())
        return std::nullopt;
    return receipt_from_rpc(r);
}

bytes RpcBackend::call(const Address& to, bytes_view data)
{
    const auto r = request("eth_call", {{{"to", to_hex(to)}, {"data", to_hex(data)}}, "latest"});
    if (!r.is_string())
        throw Error{Errc::protocol_error, "eth_call: expected hex data"};
    try
    {
        return from_hex(r.get<std::string>());
    }
    catch (const Error& e)
    {
        throw Error{Errc::protocol_error, std::string{"eth_call: "} + e.what()};
    }
}

uint64_t RpcBackend::block_number()
{
    return quantity_u64(request("eth_blockNumber", nlohmann::json::array()), "eth_blockNumber");
}

Receipt receipt_from_rpc(const nlohmann::json& j)
{
    if (!j.is_object())
        throw Error{Errc::protocol_error, "receipt: expected object"};
    Receipt r;
    r.tx_hash = fixed_field<32>(j.value("transactionHash", nlohmann::json{}), "receipt.transactionHash");
    // Pre-Byzantium receipts have no status; treat them as successful.
    r.success = !j.contains("status") || j["status"].is_null() || quantity_u64(j["status"], "receipt.status") == 1;
    if (const auto it = j.find("contractAddress"); it != j.end() && !it->is_null())
        r.contract_address = fixed_field<20>(*it, "receipt.contractAddress");
    r.block_number = quantity_u64(j.value("blockNumber", nlohmann::json{}), "receipt.blockNumber");
    r.gas_used = quantity_u64(j.value("gasUsed", nlohmann::json{}), "receipt.gasUsed");
    return r;
}
}  // namespace workbench::chain
