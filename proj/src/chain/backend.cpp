// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/chain/backend.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/codec/keccak.hpp>
#include <workbench/codec/rlp.hpp>
#include <workbench/error.hpp>
#include <regex>

namespace workbench::chain
{
namespace
{
uint64_t u64_field(const nlohmann::json& j, const char* key, uint64_t fallback)
{
    const auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return fallback;
    if (it->is_number_unsigned() || (it->is_number_integer() && it->get<int64_t>() >= 0))
        return it->get<uint64_t>();
    if (it->is_string())
    {
        const auto s = it->get<std::string>();
        if (!s.empty() && s.size() <= 20 && s.find_first_not_of("0123456789") == std::string::npos)
        {
            const auto v = uint256{s};
            if (v <= std::numeric_limits<uint64_t>::max())
                return static_cast<uint64_t>(v);
        }
    }
    throw Error{Errc::invalid_argument, std::string{"'"} + key + "' must be a non-negative integer"};
}

uint256 u256_field(const nlohmann::json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return 0;
    if (it->is_number_unsigned() || (it->is_number_integer() && it->get<int64_t>() >= 0))
        return it->get<uint64_t>();
    if (it->is_string())
    {
        const auto s = it->get<std::string>();
        if (!s.empty() && s.size() <= 78 && s.find_first_not_of("0123456789") == std::string::npos)
        {
            const boost::multiprecision::cpp_int v{s};
            if (v <= std::numeric_limits<uint256>::max())
                return static_cast<uint256>(v);
        }
    }
    throw Error{Errc::invalid_argument, std::string{"'"} + key + "' must be a non-negative integer"};
}
}  // namespace

nlohmann::json to_json(const Receipt& r)
{
    return {
        {"tx_hash", to_hex(r.tx_hash)},
        {"status", r.success ? "success" : "failure"},
        {"contract_address", r.contract_address ? nlohmann::json(to_hex(*r.contract_address)) : nlohmann::json(nullptr)},
        {"block_number", std::to_string(r.block_number)},
        {"gas_used", std::to_string(r.gas_used)},
    };
}

Receipt receipt_from_json(const nlohmann::json& j)
{
    Receipt r;
    r.tx_hash = fixed_from_hex<32>(j.at("tx_hash").get<std::string>());
    r.success = j.at("status").get<std::string>() == "success";
    if (const auto& a = j.at("contract_address"); !a.is_null())
        r.contract_address = fixed_from_hex<20>(a.get<std::string>());
    r.block_number = u64_field(j, "block_number", 0);
    r.gas_used = u64_field(j, "gas_used", 0);
    return r;
}

void NetworkConfig::validate() const
{
    if (name.empty())
        throw Error{Errc::invalid_argument, "network name must not be empty"};
    if (chain_id == 0)
        throw Error{Errc::invalid_argument, "chain id must be at least 1"};
    if (gas_limit_default == 0)
        throw Error{Errc::invalid_argument, "default gas limit must be positive"};
    if (poll_interval.count() <= 0 || receipt_timeout.count() <= 0)
        throw Error{Errc::invalid_argument, "poll interval and receipt timeout must be positive"};
    if (kind == NetworkKind::rpc)
    {
        // Nodes listen on dedicated ports, so the port is mandatory.
        static const std::regex url{R"(^https?://[A-Za-z0-9.\-]+:([0-9]{1,5})(/.*)?$)"};
        std::smatch m;
        if (!std::regex_match(rpc_url, m, url))
            throw Error{Errc::invalid_argument, "rpc_url must look like http://host:port[/path]"};
        const auto port = std::stoul(m[1].str());
        if (port == 0 || port > 65535)
            throw Error{Errc::invalid_argument, "rpc_url port out of range"};
    }
}

nlohmann::json NetworkConfig::to_json() const
{
    nlohmann::json j = {
        {"id", id},
        {"name", name},
        {"kind", kind == NetworkKind::rpc ? "rpc" : "mock"},
        {"chain_id", std::to_string(chain_id)},
        {"gas_price", gas_price.str()},
        {"gas_limit_default", std::to_string(gas_limit_default)},
        {"poll_interval_ms", std::to_string(poll_interval.count())},
        {"receipt_timeout_ms", std::to_string(receipt_timeout.count())},
    };
    if (kind == NetworkKind::rpc)
        j["rpc_url"] = rpc_url;
    return j;
}

NetworkConfig NetworkConfig::from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw Error{Errc::invalid_argument, "network definition must be an object"};
    NetworkConfig n;
    n.id = j.value("id", "");
    if (j.contains("name") && !j["name"].is_string())
        throw Error{Errc::invalid_argument, "'name' must be a string"};
    n.name = j.value("name", "");

    const auto kind = j.value("kind", "");
    const bool has_url = j.contains("rpc_url") && j["rpc_url"].is_string();
    if (kind == "rpc" || (kind.empty() && has_url && !j.value("mock", false)))
    {
        n.kind = NetworkKind::rpc;
        n.rpc_url = has_url ? j["rpc_url"].get<std::string>() : "";
    }
    else if (kind == "mock" || (kind.empty() && j.value("mock", false)))
        n.kind = NetworkKind::mock;
    else
        throw Error{Errc::invalid_argument, "network needs either an rpc_url or \"mock\": true"};

    n.chain_id = u64_field(j, "chain_id", 0);
    n.gas_price = u256_field(j, "gas_price");
    n.gas_limit_default = u64_field(j, "gas_limit_default", 4'000'000);
    n.poll_interval = std::chrono::milliseconds{u64_field(j, "poll_interval_ms", 250)};
    n.receipt_timeout = std::chrono::milliseconds{u64_field(j, "receipt_timeout_ms", 30'000)};
    return n;
}

Address derive_contract_address(const Address& sender, uint64_t nonce)
{
    const rlp::Item item{rlp::Item::List{rlp::Item::string(sender.view()), rlp::Item::uint(nonce)}};
    return Address::from(keccak256(rlp::encode(item)).view().subspan(12));
}
}  // namespace workbench::chain
